#!/usr/bin/env python3
"""Smoke test for the quartic_theta_py extension module.

Builds the cdylib if needed, imports it from a staging directory, and
checks one frozen reference value plus the end-to-end pipeline:
period matrix -> bitangents -> reconstructed fingerprint -> verdict.

Run from anywhere:  python3 python/smoke_test.py
"""

import functools
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent

# theta[000|000](i*I_3, 0) = (sum_n e^{-pi n^2})^3, frozen from an
# independent scalar evaluation of the genus-1 series.
CUBE_AT_I = 1.2823631158594554


def load_module():
    """Build the extension and import it under its module name."""
    subprocess.run(
        ["cargo", "build", "-p", "quartic-theta-py"],
        cwd=REPO_ROOT,
        check=True,
    )
    lib = REPO_ROOT / "target" / "debug" / "libquartic_theta_py.so"
    if not lib.exists():  # e.g. macOS
        lib = REPO_ROOT / "target" / "debug" / "libquartic_theta_py.dylib"
    if not lib.exists():
        sys.exit(f"extension library not found under {REPO_ROOT / 'target' / 'debug'}")
    stage = Path(tempfile.mkdtemp(prefix="quartic_theta_py_"))
    shutil.copy2(lib, stage / "quartic_theta_py.so")
    sys.path.insert(0, str(stage))
    import quartic_theta_py

    return quartic_theta_py


def check(name, ok, detail=""):
    status = "ok" if ok else "FAIL"
    line = f"  [{status}] {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    if not ok:
        sys.exit(1)


def xor_label(*labels):
    """Bitwise sum of characteristics given as 'ttt|bbb' strings."""
    tops, bottoms = zip(*(l.split("|") for l in labels))
    combine = lambda parts: "".join(
        str(functools.reduce(lambda a, b: a ^ b, (int(p[i]) for p in parts)))
        for i in range(3)
    )
    return combine(tops) + "|" + combine(bottoms)


def main():
    qt = load_module()
    print(f"module loaded: {qt.__name__}")

    # --- counts and parity -------------------------------------------------
    evens = qt.characteristics_list(3, "even")
    odds = qt.characteristics_list(3, "odd")
    check("36 even / 28 odd characteristics", (len(evens), len(odds)) == (36, 28))

    # --- frozen theta value at i*I_3 ---------------------------------------
    identity_tau = qt.PeriodMatrix(
        [[1j, 0, 0], [0, 1j, 0], [0, 0, 1j]]
    )
    value, tail, radius = qt.theta_with_certificate("000|000", identity_tau)
    check(
        "theta[000|000](i*I_3) matches frozen cube value",
        abs(value - CUBE_AT_I) < 1e-12 and tail < 1e-12 and radius >= 1,
        f"value={value.real:.16g}, tail={tail:.2e}",
    )

    # --- gradients are genuinely vectorial ----------------------------------
    grad = qt.grad_theta("001|001", identity_tau)
    check(
        "odd-characteristic gradient has 3 components, not all zero",
        len(grad) == 3 and max(abs(c) for c in grad) > 1e-6,
    )

    # --- random period matrix: conditioning and round trip ------------------
    point = qt.random_tau(5, 3, 0.3)
    check(
        "random_tau(5) is genus 3 and well conditioned",
        point.genus == 3 and point.lambda_min >= 0.3 - 1e-9,
        f"lambda_min={point.lambda_min:.4f}",
    )
    round_trip = qt.PeriodMatrix.from_json(point.to_json())
    check(
        "JSON round trip preserves the matrix",
        max(
            abs(a - b)
            for ra, rb in zip(point.tau(), round_trip.tau())
            for a, b in zip(ra, rb)
        )
        == 0.0,
    )

    # --- bitangents ----------------------------------------------------------
    lines = qt.extract_bitangents(point)
    check(
        "28 bitangent lines with odd labels and 3 coordinates each",
        len(lines) == 28
        and all(len(coords) == 3 for _, coords in lines)
        and sorted(label for label, _ in lines) == sorted(odds),
    )

    # --- fingerprint reconstruction vs direct theta constants ---------------
    direct = qt.fingerprint_from_tau(point)
    rebuilt = qt.fingerprint_from_bitangents(lines)
    check(
        "fingerprints carry the 36 even characteristics",
        sorted(direct) == sorted(evens) and sorted(rebuilt) == sorted(evens),
    )
    deviation = max(abs(direct[m] - rebuilt[m]) for m in direct)
    check(
        "reconstruction from lines matches direct constants",
        deviation < 1e-7,
        f"max deviation={deviation:.3e}",
    )

    # --- verdicts -------------------------------------------------------------
    verdict, dev = qt.compare_fingerprints(direct, rebuilt)
    check("same curve compares SAME", verdict == "SAME", f"deviation={dev:.3e}")
    other = qt.fingerprint_from_tau(qt.random_tau(6, 3, 0.3))
    verdict, dev = qt.compare_fingerprints(direct, other)
    check(
        "different curve compares DIFFERENT",
        verdict == "DIFFERENT" and dev > 1e-3,
        f"deviation={dev:.3e}",
    )

    # --- azygeticity and the deterministic Aronhold set ----------------------
    check("qt.is_azygetic on a known azygetic triple",
          qt.is_azygetic("001|001", "010|010", "011|001"))
    check("qt.is_azygetic on a known syzygetic triple",
          not qt.is_azygetic("100|100", "010|010", "110|000"))
    m1, m2 = "000|000", "110|001"
    members = qt.aronhold_find(m1, m2)
    check(
        "aronhold_find: 7 odd members, first three sum to m2, all sum to m1",
        len(members) == 7
        and len(set(members)) == 7
        and all(m in odds for m in members)
        and xor_label(*members[:3]) == m2
        and xor_label(*members) == m1,
    )

    # --- Weber identity residual over fresh random inputs --------------------
    residual = qt.weber_max_residual(trials=3, seed=1)
    check(
        "theta-quotient identity holds on random curves",
        residual < 1e-8,
        f"max residual={residual:.3e}",
    )

    # --- error mapping ---------------------------------------------------------
    try:
        qt.theta_value("00|00", identity_tau)
    except ValueError:
        check("genus mismatch raises ValueError", True)
    else:
        check("genus mismatch raises ValueError", False)

    print("smoke test passed")


if __name__ == "__main__":
    main()
