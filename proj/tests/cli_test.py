"""End-to-end checks of the command-line tool: JSON output against the
shipped schemas, exit codes, determinism and emitted files."""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

CLI, DATA, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
FILES = ["--data", str(DATA / "gdpc1q.csv"), "--data", str(DATA / "gcec1q.csv")]
EST = ["--sample", "1980Q1:2006Q1"]

failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = load_registry()


def validate(schema, args):
    r = run(*args, "--format", "json")
    check(r.returncode == 0, f"{schema}: exit {r.returncode}: {r.stderr.strip()}")
    if r.returncode != 0:
        return None
    doc = json.loads(r.stdout)
    validator = Draft202012Validator(REGISTRY.contents(f"urn:tsecon:{schema}"), registry=REGISTRY)
    errors = sorted(validator.iter_errors(doc), key=str)
    for e in errors[:5]:
        check(False, f"{schema}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
    # round trip: re-serialized output validates and is unchanged
    again = json.loads(json.dumps(doc))
    check(again == doc, f"{schema}: JSON round trip changed the document")
    return doc


gdp = ["--var", "GDPC1Q"]
corr = validate("correlogram", ["correlogram", *FILES, *gdp, *EST])
if corr:
    rows = corr["correlogram"]["rows"]
    check(len(rows) == 20, "correlogram: default max lag 20")
    check(abs(rows[0]["acf"] - 0.9725) < 5e-5, "correlogram: lag-1 acf")

arima = validate("arima", ["arima", *FILES, *gdp, *EST, "--forecast", "2006Q2:2013Q1", "--p", "1", "--d", "1", "--q", "1"])
if arima:
    check(abs(arima["fit"]["loglik"] + 567.1968) < 0.05, "arima: loglik")
    check(len(arima["forecast"]) == 28, "arima: 28 forecast rows")
    check([d["name"] for d in arima["diagnostics"]] != [], "arima: diagnostics battery")
validate("arima", ["armax", *FILES, *gdp, *EST, "--exog", "GCEC1Q", "--p", "1", "--d", "1", "--q", "1"])
screen = validate("screening", ["arima", *FILES, *gdp, *EST, "--screen"])
if screen:
    check(len(screen["screening"]) == 5, "screening: five default orders")
validate("var", ["var", *FILES, "--vars", "GDPC1Q,GCEC1Q", "--transform", "diff", *EST, "--max-lag", "8", "--lag", "1",
                 "--horizon", "20", "--forecast", "2006Q2:2013Q1"])
validate("varma", ["varma", *FILES, "--vars", "GDPC1Q,GCEC1Q", *EST])
validate("adf", ["adf", *FILES, *gdp, *EST, "--max-lag", "4"])
coint = validate("coint", ["coint", *FILES, "--y", "GDPC1Q", "--x", "GCEC1Q", *EST])
if coint:
    check(abs(coint["coint"]["step3"]["coefficients"][1]["value"] - 6.88632) < 1e-3, "coint: step-3 slope")
validate("garch", ["garch", *FILES, *gdp])
validate("garch_compare", ["garch", *FILES, *gdp, "--compare", "--models", "garch,gjr,egarch", "--dists", "normal,ged"])
kal = validate("kalman", ["kalman", *FILES, *gdp, *EST, "--p", "1", "--q", "1"])
if kal:
    check(abs(kal["loglik"] + 570.6483) < 0.05, "kalman: loglik")
validate("evaluate", ["evaluate", *FILES, *gdp, "--forecast-var", "GCEC1Q", "--sample", "2006Q2:2013Q1"])

# usage errors and failures
check(run("correlogram", *FILES, *gdp, "--max-lag", "0").returncode == 2, "exit: max-lag 0 is a usage error")
nope = run("arima", *FILES, "--var", "NOPE")
check(nope.returncode == 1 and "GCEC1Q" in nope.stderr, "exit: unknown variable lists the available series")
check(run("arima", "--data", "/nonexistent.csv", *gdp).returncode == 2, "exit: missing input file")
check(run("frobnicate").returncode == 2, "exit: unknown command")
check(run("arima", *FILES, *gdp, "--sample", "2006Q1:1980Q1").returncode != 0, "exit: reversed sample")

# determinism: seeded simulation and text output are byte-stable
sim = ["garch", "--simulate", "2000", "--params", "const=0,omega=0.1,alpha=0.1,beta=0.8", "--seed", "11"]
a, b = run(*sim), run(*sim)
check(a.returncode == 0 and a.stdout == b.stdout, "determinism: seeded simulation")
check(run(*sim[:-1], "12").stdout != a.stdout, "determinism: the seed matters")
t1 = run("var", *FILES, "--vars", "GDPC1Q,GCEC1Q", "--transform", "diff", *EST)
t2 = run("var", *FILES, "--vars", "GDPC1Q,GCEC1Q", "--transform", "diff", *EST)
check(t1.returncode == 0 and t1.stdout == t2.stdout, "determinism: text output")

# an explosive VAR warns and emits responses only on request
with tempfile.TemporaryDirectory() as tmp:
    path = pathlib.Path(tmp) / "explosive.csv"
    a, b, lines = 1.0, 1.0, ["date,A,B"]
    for i in range(120):
        a = 1.08 * a + (i % 7 - 3) * 0.3
        b = 0.5 * b + (i % 5 - 2) * 0.4
        lines.append(f"{1950 + i // 4}Q{i % 4 + 1},{a},{b}")
    path.write_text("\n".join(lines) + "\n")
    plain = run("var", "--data", str(path), "--vars", "A,B", "--lag", "1", "--horizon", "3")
    forced = run("var", "--data", str(path), "--vars", "A,B", "--lag", "1", "--horizon", "3", "--force-irf")
    check(plain.returncode == 0 and "not stable" in plain.stdout + plain.stderr, "unstable VAR: warning")
    check("Responses to" not in plain.stdout and "Responses to" in forced.stdout, "unstable VAR: IRF only with --force-irf")

# CSV output parses with a header row
c = run("correlogram", *FILES, *gdp, *EST, "--format", "csv")
rows = list(csv.DictReader(io.StringIO(c.stdout)))
check(c.returncode == 0 and len(rows) == 20 and "acf" in rows[0], "csv: correlogram table")

# --out writes the report and plot data
with tempfile.TemporaryDirectory() as out:
    r = run("arima", *FILES, *gdp, *EST, "--forecast", "2006Q2:2013Q1", "--p", "1", "--d", "1", "--q", "1", "--out", out)
    files = sorted(p.name for p in pathlib.Path(out).iterdir())
    check(r.returncode == 0 and any(f.endswith(".txt") for f in files), f"--out: report written ({files})")
    fan = [p for p in pathlib.Path(out).iterdir() if p.name.startswith("forecast") and p.suffix == ".dat"]
    check(len(fan) == 1, "--out: forecast fan data")
    if fan:
        lines = [l.split() for l in fan[0].read_text().splitlines() if l and not l.startswith("#")]
        check(len(lines) > 0 and all(len(l) == 4 for l in lines), "--out: banded plot data has four columns")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
