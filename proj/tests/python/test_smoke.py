"""End-to-end smoke tests for the python module and the CLI.

Run directly: PYTHONPATH=<build>/python CHEXPM_CLI=<path> python3 test_smoke.py
"""

import json
import math
import os
import subprocess
import sys

import numpy as np

import chexpm


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def test_expm_matches_oracle():
    for n in (2, 3, 5, 7):
        h = chexpm.random_traceless_hermitian(n, 1000 + n)
        check(abs(np.trace(h)) < 1e-13, "trace removed")
        check(np.abs(h - h.conj().T).max() == 0.0, "hermitian")
        for t in (0.1, 1.0, 3.0):
            u = chexpm.expm_ch(h, t)
            ref = chexpm.expm_oracle(h, t)
            check(np.abs(u - ref).max() < 1e-10, f"expm deviation at n={n}, t={t}")
            check(np.abs(u @ u.conj().T - np.eye(n)).max() < 1e-10, "unitarity")


def test_general_complex_path():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u = chexpm.expm_ch(m, 0.7)
    ref = chexpm.expm_oracle(m, 0.7)
    check(np.abs(u - ref).max() < 1e-9, "general-path deviation")
    roots = chexpm.char_roots_general(m)
    check(abs(np.prod(roots) - np.linalg.det(m)) < 1e-9 * max(1.0, abs(np.linalg.det(m))),
          "root product vs determinant")


def test_invariants_and_response():
    h = chexpm.random_traceless_hermitian(4, 42)
    ps = chexpm.trace_powers(h, 4)
    s = chexpm.sym_from_traces(ps, 4)
    vals = chexpm.eig_hermitian(h)
    s2 = chexpm.sym_from_spectrum(vals)
    check(np.abs(s - s2).max() < 1e-10, "invariant routes agree")
    check(s[0] == 1.0 and s[1] == 0.0, "S_0 = 1, S_1 = 0")

    rd = chexpm.response_derivs(np.array([1.0, -1.0], dtype=complex), 0.9, 1)
    check(abs(rd[0] - 1j * math.sin(0.9)) < 1e-14, "F for the +-1 pair")
    check(abs(rd[1] - math.cos(0.9)) < 1e-14, "first derivative entry")
    c = chexpm.response_contour_oracle(np.array([1.0, -1.0], dtype=complex), 0.9)
    check(abs(c - rd[0]) < 1e-10, "contour oracle")


def test_explicit_forms_and_resolvent():
    for n in (2, 3, 4, 5):
        h = chexpm.random_traceless_hermitian(n, 5 * n)
        a = chexpm.su_explicit(h, 0.8)
        b = chexpm.expm_ch(h, 0.8)
        check(np.abs(a - b).max() < 1e-10, f"explicit form at n={n}")
    m = chexpm.random_traceless_hermitian(4, 17)
    mat, coeffs = chexpm.resolvent_poly(m, 0.05 + 0.02j)
    lhs = (np.eye(4) - (0.05 + 0.02j) * m) @ mat
    check(np.abs(lhs - np.eye(4)).max() < 1e-10, "resolvent identity")
    check(len(coeffs) == 4, "resolvent coefficient count")


def test_geometry():
    verts = chexpm.simplex_vertices(4, 2.0)
    gram = verts @ verts.T
    check(np.abs(np.diag(gram) - 4.0).max() < 1e-12, "vertex norms")
    off = gram - np.diag(np.diag(gram))
    check(np.abs(off[off != 0] + 4.0 / 3.0).max() < 1e-12, "pairwise inner products")

    lam = chexpm.angles_to_spectrum(5, 1.1, [0.9, 0.7, 2.4])
    check(abs(sum(lam)) < 1e-12, "traceless")
    check(abs(sum(v * v for v in lam) - 1.21) < 1e-12, "radius")
    back = chexpm.spectrum_to_angles(lam)
    check(np.abs(np.array(back["angles"]) - [0.9, 0.7, 2.4]).max() < 1e-10, "roundtrip")

    inv = chexpm.invariants_from_angles(4, 1.0, [1.1, 0.3])
    rec = chexpm.su4_angles_from_invariants(inv["tr_h2"], inv["tr_h3"], inv["tr_h4"])
    inv2 = chexpm.invariants_from_angles(4, rec["r"], rec["angles"])
    check(abs(inv2["tr_h3"] - inv["tr_h3"]) < 1e-9, "su4 inverse forward residual")

    theta = chexpm.su3_angle_from_invariants(1.5, 0.0)
    check(abs(theta - math.pi / 6.0) < 1e-9, "su3 inverse at det 0")


def test_spin():
    j = 1.5
    g = chexpm.spin_generator(j, [0.0, 0.0, 1.0])
    check(np.abs(np.diag(g) - [1.5, 0.5, -0.5, -1.5]).max() < 1e-14, "Jz diagonal")
    vals = chexpm.eig_hermitian(chexpm.spin_generator(j, [0.6, 0.0, 0.8]))
    check(np.abs(vals.real - [1.5, 0.5, -0.5, -1.5]).max() < 1e-10, "tilted spectrum")
    f = chexpm.spin_response(1.0, 1.3)
    check(abs(f - (2j) ** 2 / 2.0 * math.sin(0.65) ** 2) < 1e-14, "spin response")
    moments = chexpm.spin_trace_moments(1.0, 2)
    check(moments == [2.0, 2.0], "trace moments")


def test_against_scipy_when_available():
    try:
        from scipy.linalg import expm as scipy_expm
    except ImportError:
        print("  (scipy not installed; skipping the external oracle)")
        return
    for n in (3, 6, 9):
        h = chexpm.random_traceless_hermitian(n, 2024 + n)
        rho = np.abs(chexpm.eig_hermitian(h)).max()
        for t in (0.2, 1.7):
            dev = np.abs(chexpm.expm_ch(h, t) - scipy_expm(1j * t * h)).max()
            check(dev <= 1e-9 * math.exp(t * rho), f"scipy cross-check n={n}, t={t}")
    rng = np.random.default_rng(9)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    dev = np.abs(chexpm.expm_ch(m, 0.8) - scipy_expm(0.8j * m)).max()
    check(dev < 1e-10, "scipy cross-check, general matrix")


def run_cli(*args):
    cli = os.environ.get("CHEXPM_CLI", "chexpm")
    return subprocess.run([cli, *args], capture_output=True, text=True)


def test_cli():
    mat = json.dumps({"n": 2, "re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]})
    r = run_cli("expm", "--json", mat, "--t", str(math.pi / 2), "--compare")
    check(r.returncode == 0, f"expm exit: {r.stderr}")
    out = json.loads(r.stdout)
    check(out["max_dev_vs_oracle"] < 1e-12, "CLI deviation")
    check(abs(out["matrix"]["im"][0][1] - 1.0) < 1e-12, "exp(i pi/2 sigma_x)")

    # file input path
    import tempfile
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        f.write(mat)
        path = f.name
    try:
        r = run_cli("expm", "--input", path, "--t", "0.3", "--compare")
        check(r.returncode == 0, "file input works")
        check(json.loads(r.stdout)["max_dev_vs_oracle"] < 1e-12, "file input deviation")
        r = run_cli("expm", "--input", path, "--json", mat)
        check(r.returncode == 1, "two input sources rejected")
    finally:
        os.unlink(path)

    r = run_cli("expm", "--json", mat, "--t", "0")
    out = json.loads(r.stdout)
    check(out["matrix"]["re"] == [[1, 0], [0, 1]], "identity at t=0")

    # explicit forms stop at N = 5: usage error, exit 1
    big = json.dumps({
        "n": 6,
        "re": [[0] * 6 for _ in range(6)],
        "im": [[0] * 6 for _ in range(6)],
    })
    r = run_cli("expm", "--json", big, "--method", "explicit")
    check(r.returncode == 1, "unsupported order exits 1")

    r = run_cli("expm", "--json", "{broken", "--t", "1")
    check(r.returncode == 1, "malformed JSON exits 1")

    r = run_cli("invariants", "--json",
                json.dumps({"n": 3, "re": [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
                            "im": [[0] * 3 for _ in range(3)]}))
    out = json.loads(r.stdout)
    check(out["S"] == [[1, 0], [6, 0], [11, 0], [6, 0]], "S of diag(1,2,3)")
    check(out["I"][3] == [36, 0], "I_3")

    r = run_cli("roots", "--n", "3", "--r", "1.5", "--angles", "0.25")
    out = json.loads(r.stdout)
    check(abs(out["invariants"]["tr_h2"] - 2.25) < 1e-12, "roots tr_h2")
    lam = out["spectrum"]
    r2 = run_cli("roots", "--n", "3", "--spectrum", ",".join(str(v) for v in lam))
    out2 = json.loads(r2.stdout)
    check(abs(out2["angles"][0] - 0.25) < 1e-9, "roots inverse")

    r = run_cli("spin", "--j", "3/2", "--axis", "0,0,1", "--theta", "0.4")
    out = json.loads(r.stdout)
    check(out["character"]["deviation"] < 1e-10, "spin character deviation")

    r = run_cli("bench", "--nmin", "2", "--nmax", "3", "--batch", "5", "--reps", "1")
    check(r.returncode == 0, "bench exit")
    lines = r.stdout.strip().splitlines()
    check(lines[0] == "method,n,batch,ns_per_matrix,max_deviation", "bench header")
    check(len(lines) == 1 + 3 + 3, "bench rows: ch/oracle/explicit per n")

    # explicit-form rows stop at n = 5
    r = run_cli("bench", "--nmin", "6", "--nmax", "6", "--batch", "2", "--reps", "1")
    methods = [line.split(",")[0] for line in r.stdout.strip().splitlines()[1:]]
    check(methods == ["ch", "oracle"], "no explicit row above n=5")

    r = run_cli("selftest", "--samples", "0")
    check(r.returncode == 1, "samples 0 exits 1")

    r = run_cli("selftest", "--suite", "response", "--samples", "4")
    check(r.returncode == 0, "suite filter runs")
    check("response" in r.stdout and "simplex" not in r.stdout, "filter limits suites")

    # deterministic output: identical bytes on repeated runs
    a = run_cli("expm", "--json", mat, "--t", "0.3", "--compare").stdout
    b = run_cli("expm", "--json", mat, "--t", "0.3", "--compare").stdout
    check(a == b, "byte-identical reruns")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
