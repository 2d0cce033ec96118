#!/usr/bin/env python3
"""Exit-code and output contract checks for the qlt command-line tool."""

import json
import subprocess
import sys

QLT = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([QLT, *args], capture_output=True, text=True)


def check(name, cond, detail=""):
    if cond:
        print(f"[ok] {name}")
    else:
        failures.append(name)
        print(f"[FAIL] {name} {detail}")


# exact evaluation prints fractions
r = run("--q", "1/2", "eval", "qfact", "3")
check("eval qfact exact", r.returncode == 0 and json.loads(r.stdout)["value"] == "21/8", r.stdout)

r = run("--q", "1/2", "eval", "qnum", "0")
check("eval qnum zero", r.returncode == 0 and json.loads(r.stdout)["value"] == "0", r.stdout)

r = run("--q", "1/2", "eval", "gamma1", "4")
check("eval gamma1", r.returncode == 0 and abs(json.loads(r.stdout)["value"] - 2.625) < 1e-12, r.stdout)

# unknown function -> usage error
r = run("--q", "1/2", "eval", "nosuchfn", "1")
check("unknown eval function exits 2", r.returncode == 2)

r = run("--q", "abc", "eval", "qnum", "1")
check("bad q exits 2", r.returncode == 2)

r = run("eval")
check("missing arguments exit 2", r.returncode == 2)

# transform worked examples
r = run("--q", "1/2", "transform", "mono:1,1", "--kind", "1", "--r", "1", "--s", "1", "--mode", "both")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check(
    "transform xy both",
    r.returncode == 0 and abs(rec.get("value_numeric", 0) - 1) < 1e-10 and rec.get("rel_diff", 1) < 1e-10,
    r.stdout,
)

r = run("--q", "1/2", "transform", "mono:0,0", "--kind", "1", "--r", "2", "--s", "3", "--mode", "numeric")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check("transform constant", r.returncode == 0 and abs(rec.get("value_numeric", 0) - 1 / 6) < 1e-12, r.stdout)

r = run("--q", "1/2", "transform", "expqadd:0.5,0.25,small", "--kind", "1", "--r", "1", "--s", "1",
        "--mode", "both")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check(
    "transform exponential image",
    r.returncode == 0 and abs(rec.get("value_catalog", 0) - 8 / 3) < 1e-12 and rec.get("rel_diff", 1) < 1e-10,
    r.stdout,
)

# out-of-region numeric -> divergence, exit 3 with axis diagnostic
r = run("--q", "1/2", "transform", "expqadd:1.5,0,small", "--kind", "1", "--r", "1", "--s", "1",
        "--mode", "numeric")
check("out-of-region exits 3", r.returncode == 3 and "axis" in r.stderr, r.stderr)

# unsupported catalog pairing -> exit 4
r = run("--q", "1/2", "transform", "expqadd:0.1,0.1,big", "--kind", "1", "--mode", "catalog")
check("catalog miss exits 4", r.returncode == 4, r.stderr)

# solve commands
r = run("--q", "1/2", "solve", "transport", "--c", "-1", "--f", "mono:2", "--g", "mono:2")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check(
    "solve transport",
    r.returncode == 0 and rec.get("residual_max", 1) < 1e-10 and "ward" in rec.get("solution", ""),
    r.stdout,
)

r = run("--q", "1/2", "solve", "abel_ward")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check(
    "solve abel_ward",
    r.returncode == 0 and "e_q(-1*x)" in rec.get("solution", "") and rec.get("residual_exact") is True,
    r.stdout,
)

r = run("--q", "1/2", "solve", "telegraph", "--c", "2", "--alpha", "1", "--beta", "3")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check(
    "solve telegraph",
    r.returncode == 0 and rec.get("residual_max", 1) < 1e-8 and rec.get("transform_check_error", 1) < 1e-8,
    r.stdout,
)

r = run("--q", "1/2", "solve", "wave", "--c", "1", "--f", "zero", "--g", "zero")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check("solve wave zero data", r.returncode == 0 and rec.get("residual_max", 1) == 0, r.stdout)

r = run("--q", "1/2", "solve", "wave", "--c", "1", "--f", "const", "--g", "zero")
rec = json.loads(r.stdout) if r.returncode == 0 else {}
check("solve wave incomplete inversion", r.returncode == 0 and rec.get("inversion_complete") is False, r.stdout)

# verify: small suite, JSON report, determinism
r1 = run("--q", "1/2", "verify", "identities", "--output", "json")
r2 = run("--q", "1/2", "verify", "identities", "--output", "json")
check("verify identities passes", r1.returncode == 0, r1.stdout[-400:] if r1.returncode else "")
check("verify reports are byte-identical", r1.stdout == r2.stdout)

r = run("--q", "1/2", "verify", "nosuchsuite")
check("unknown suite exits 2", r.returncode == 2)

# csv output
r = run("--q", "1/2", "--output", "csv", "verify", "divergence")
check("csv output", r.returncode == 0 and r.stdout.startswith("suite,id,kind,q,params"), r.stdout[:200])

if failures:
    print(f"{len(failures)} CLI check(s) failed: {failures}")
    sys.exit(1)
print("all CLI checks passed")
