#!/usr/bin/env python3
"""Golden suite for the command-line tool: exit codes, key verdicts, byte-stable JSON."""
import json
import os
import subprocess
import sys

TOOL, DATA, GOLDEN = (os.path.abspath(a) for a in sys.argv[1:4])
UPDATE = os.environ.get("TCWB_UPDATE_GOLDEN") == "1"


def run(args):
    p = subprocess.run([TOOL] + args, capture_output=True, text=True, cwd=DATA)
    return p.returncode, p.stdout, p.stderr


def root(j, q):
    node = j["body"]["nodes"][j["body"]["root"]]["quantities"][q]
    return node["lo"], node["hi"]


# (arguments, expected exit code, predicate on parsed --json output or None)
CASES = [
    (["bounds", "(T2 v S1)"], 0, lambda j: root(j, "TC") == (4, 4)),
    (["bounds", "((T2 v S1) x T2)"], 0, lambda j: root(j, "cat") == (5, 5)),
    (["bounds", "point"], 0, lambda j: all(q["lo"] == 1 and q["hi"] == 1 for k, q in j["body"]["nodes"][0]["quantities"].items() if k in ("cat", "TC", "TCM"))),
    (["bounds", "(S3 x S3) v S1"], 0, lambda j: root(j, "TC")[1] == 4),
    (["bounds", "S2"], 0, lambda j: j["body"]["nodes"][0]["quantities"]["TC"]["hi"] is None),
    (["bounds", "S1", "--retract", "S1>point"], 0, None),
    (["bounds", "S1", "--explain", "TC:hi"], 0, lambda j: "R5" in j["body"]["explanations"]["TC:hi"]),
    (["ring", "file:rp2.cplx", "--field", "f2"], 0, lambda j: j["body"]["cup_length"] == 2 and j["header"]["field"] == "f2"),
    (["ring", "file:torus.cplx"], 0, lambda j: j["body"]["cup_length"] == 2),
    (["cover", "verify", "triangle.cov", "--k", "2"], 0, lambda j: j["body"]["is_k_cover"]),
    (["cover", "verify", "triangle.cov"], 0, lambda j: j["body"]["minimal_k"] == 2),
    (["cover", "verify", "singletons.cov", "--k", "1"], 1, lambda j: j["body"]["witness"]["missed"] in (0, 1)),
    (["cover", "extend", "path.cov", "--m", "3"], 0, lambda j: len(j["body"]["sets"]) == 4 and j["body"]["k"] == 2),
    (["cover", "product", "--a", "a.cov", "--b", "b.cov"], 0, lambda j: j["body"]["product"]["ground_size"] == 9),
    (["cover", "product", "--a", "path.cov", "--b", "path.cov"], 1, lambda j: j["verdict"]["summary"] == "hypothesis violated"),
    (["cover", "nary", "--system", "a.cov:2", "--system", "a.cov:2"], 0, None),
    (["plan", "S1 v S1", "--random", "2000", "--seed", "7"], 0, lambda j: j["body"]["pieces"] == 3 and j["body"]["coverage"] == 1.0),
    (["plan", "T2", "--pieces"], 0, lambda j: j["body"]["pieces"] == 3),
    (["plan", "S2", "--grid", "6"], 0, lambda j: j["body"]["reserved_violations"] == 0),
    (["plan", "T2", "--pairs", "t2_pairs.txt"], 0, None),
    (["plan", "T2", "--pair", "1 0 1 0 | -1 0 0 1"], 0, None),
    (["ak", "roundtrip", "--samples", "500", "--seed", "3"], 0, lambda j: j["header"]["seed"] == 3),
    (["ak", "equivariance", "--samples", "500"], 0, None),
    (["ak", "cover", "--samples", "500"], 0, None),
    (["ak", "roots", "1", "0", "1"], 0, lambda j: sorted(j["body"]["roots"]) == ["0+1i", "0-1i"]),
    (["ak", "classify", "inf", "1-2i"], 0, lambda j: j["body"]["f_coordinate"] == "1+2i"),
    # usage errors
    (["bounds"], 2, None),
    (["bounds", "S1", "--no-such-flag"], 2, None),
    (["bounds", "S2 x"], 2, None),
    (["bounds", "Q5"], 2, None),
    (["bounds", "S1", "--disable-rule", "R99"], 2, None),
    (["bounds", "S1", "--field", "f3"], 2, None),
    (["cover", "verify", "missing.cov"], 2, None),
    (["plan", "RP2"], 2, None),
    (["plan", "T2", "--grid", "3", "--random", "5"], 2, None),
    (["ak", "roots", "1", "0"], 2, None),
    (["ak", "quadratic", "1+", "2"], 2, None),
    ([], 2, None),
]

# Commands whose --json output is stored byte for byte.
GOLDEN_CASES = {
    "bounds_t2_wedge_s1.json": ["bounds", "(T2 v S1)"],
    "bounds_s2.json": ["bounds", "S2"],
    "ring_rp2_f2.json": ["ring", "file:rp2.cplx", "--field", "f2"],
    "cover_extend_path.json": ["cover", "extend", "path.cov", "--m", "3"],
    "cover_product.json": ["cover", "product", "--a", "a.cov", "--b", "b.cov"],
    "cover_verify_singletons.json": ["cover", "verify", "singletons.cov", "--k", "1"],
}

failures = 0


def report(ok, label, detail=""):
    global failures
    if not ok:
        failures += 1
    print(("ok   " if ok else "FAIL ") + label + (("  " + detail) if detail and not ok else ""))


for args, code, pred in CASES:
    label = " ".join(args) or "(no arguments)"
    rc, out, err = run(args + (["--json"] if args else []))
    ok = rc == code
    detail = f"exit {rc}, expected {code}; stderr: {err.strip()[:200]}"
    if ok and pred is not None:
        try:
            ok = bool(pred(json.loads(out)))
            detail = "predicate failed"
        except Exception as e:  # noqa: BLE001
            ok, detail = False, f"predicate raised {e!r}"
    report(ok, label, detail)
    # Table mode carries the same verdict and exit code.
    if args and code != 2:
        rc2, out2, _ = run(args)
        report(rc2 == code and "verdict:" in out2, label + " [table]", f"exit {rc2}")

# Determinism: identical command and seed give identical bytes.
for args in (["plan", "S1 v S1", "--random", "1000", "--seed", "11"], ["ak", "all", "--samples", "300", "--seed", "5"],
             ["bounds", "((T2 v S1) x T2)"]):
    a = run(args + ["--json"])[1]
    b = run(args + ["--json"])[1]
    report(a == b and len(a) > 0, "deterministic: " + " ".join(args))

for name, args in GOLDEN_CASES.items():
    path = os.path.join(GOLDEN, name)
    out = run(args + ["--json"])[1]
    if UPDATE:
        with open(path, "w") as f:
            f.write(out)
    try:
        with open(path) as f:
            expected = f.read()
    except FileNotFoundError:
        report(False, "golden " + name, "missing golden file")
        continue
    report(out == expected, "golden " + name, "output differs from golden file")

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
