"""Exit codes and JSON shape of the hhfcheck binary.

usage: cli_contract.py <hhfcheck> <schema.json>
"""

import json
import subprocess
import sys

import jsonschema

BIN, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as fh:
    validator = jsonschema.Draft202012Validator(json.load(fh))

failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout


def expect(code, *args):
    got, out = run(*args)
    if got != code:
        failures.append(f"{' '.join(args)}: exit {got}, expected {code}")
    return out


def validate(line, where):
    doc = json.loads(line)
    if "summary" in doc:
        return doc
    for err in validator.iter_errors(doc):
        failures.append(f"{where}: {err.json_path}: {err.message}")
    return doc


UNIT = ["--a", "1", "--b", "2"]
cases = [
    (0, ["--ineq", "hh-1.3", "--f", "x"]),
    (0, ["--ineq", "hh-frac-1.4", "--f", "1/x", "--alpha", "0.5"]),
    (0, ["--ineq", "fejer-1.6", "--f", "x^2", "--g-symmetrize", "exp(x)"]),
    (0, ["--ineq", "fejer-frac-1.7", "--f", "x^2", "--g-symmetrize", "x", "--alpha", "2.5"]),
    (0, ["--ineq", "identity-2.1", "--f", "sin(x)", "--h", "x^2"]),
    (0, ["--ineq", "bound-2.6", "--f", "exp(x)", "--h", "x"]),
    (0, ["--ineq", "bound-2.9", "--f", "x^3", "--g-symmetrize", "x", "--alpha", "1.5", "--oracle"]),
    (0, ["--ineq", "bound-2.10", "--f", "x^3", "--alpha", "0.3", "--variant", "small-alpha"]),
    (0, ["--ineq", "bound-2.20", "--f", "x^3", "--alpha", "0.5", "--q", "2", "--oracle"]),
    (0, ["--ineq", "lemma-1", "--theta", "0.4"]),
    (0, ["--ineq", "bound-2.16", "--f", "x^3", "--strict-paper"]),
    (4, ["--ineq", "hh-1.3", "--f", "-x^2"]),
    (4, ["--ineq", "fejer-1.6", "--f", "x", "--g", "x", "--force"]),
]
for code, args in cases:
    out = expect(code, "verify", *args, *UNIT)
    if out:
        validate(out, " ".join(args))

expect(2, "verify", "--ineq", "hh-1.3", "--f", "x", "--a", "2", "--b", "1")
expect(2, "verify", "--ineq", "hh-1.3", "--f", "x)", *UNIT)
expect(2, "verify", "--ineq", "hh-frac-1.4", "--f", "x", "--alpha", "0", *UNIT)
expect(2, "verify", "--ineq", "bound-2.20", "--f", "x", "--alpha", "0.5", "--q", "1", *UNIT)
expect(2, "nonsense")
expect(3, "verify", "--ineq", "hh-1.3", "--f", "x", *UNIT, "--max-evals", "42", "--tol-abs", "1e-300",
       "--tol-rel", "1e-300")

# A consistent sweep passes; every line is a valid report or the final summary.
out = expect(0, "sweep", "--count", "3", "--seed", "11", "--oracle", "--oracle-n", "20000")
lines = out.splitlines()
for i, line in enumerate(lines):
    validate(line, f"sweep line {i}")
summary = json.loads(lines[-1])["summary"]
if summary["reports"] != 45 or summary["pass"] != 45:
    failures.append(f"sweep summary {summary}")

# The printed constants produce failing rows: exit 1.
out = expect(1, "sweep", "--count", "40", "--seed", "7", "--strict-paper")
for i, line in enumerate(out.splitlines()):
    validate(line, f"strict sweep line {i}")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} contract failures")
sys.exit(1 if failures else 0)
