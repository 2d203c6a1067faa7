"""Regenerates the Taylor tables in src/coeffs.rs and the frozen reference
values in tests/coeff_reference.rs.

Series come from sympy expansions of the closed forms; reference values are
evaluated from the closed forms in 200-digit mpmath arithmetic.

    python3 coeff_reference.py series     # Rust table literals
    python3 coeff_reference.py reference  # Rust test constants
"""
import sys

import mpmath as mp
import sympy as sp

TERMS = 12
mp.mp.dps = 200

s = sp.symbols("s", positive=True)
c, si = sp.cos(s), sp.sin(s)
ch, sh = sp.cos(s / 2), sp.sin(s / 2)
D = 2 + s**2 - 2 * c - 2 * s * si

EXPRS = {
    "f5": (1 - s * si / (2 * (1 - c))) / s**2,
    "w1": (2 - 2 * c - s * si) / (2 * D),
    "w2": (s * ch - 2 * sh) ** 2 / (s**2 * D),
    "w3": (si + s) / (2 * s**3 * (1 - c)) - 2 / s**4,
    "w4": (-6 * s + (2 + 3 * s**2) * si - (s**3 + 2 * si - 6 * s) * c) / (2 * s * D**2),
    "w5": (s * ch - 2 * sh)
    / (s**4 * D**2)
    * (
        -2 * s * (3 + s**2) * ch
        + 6 * s * sp.cos(3 * s / 2)
        + 12 * sh
        + 9 * s**2 * sh
        - s**4 * sh
        - 4 * sp.sin(3 * s / 2)
        + s**2 * sp.sin(3 * s / 2)
    ),
    "a1": (1 - c) / s**2,
    "a2": (1 - si / s) / s**2,
    "b1": si / s,
}

GRID = [1e-8, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.999, 1.0, 1.001, 1.5, 2.0, 2.5, 3.0, 3.14159]


def series():
    for name, e in EXPRS.items():
        ser = sp.series(e, s, 0, 2 * TERMS + 1).removeO()
        coeffs = [sp.Rational(ser.coeff(s, 2 * k)) for k in range(TERMS)]
        lits = ", ".join(repr(float(mp.mpf(q.p) / q.q)) for q in coeffs)
        print(f"const {name.upper()}_SERIES: [f64; {TERMS}] = [{lits}];")


def reference():
    print("pub const SIGMA_GRID: [f64; %d] = [%s];" % (len(GRID), ", ".join(repr(g) for g in GRID)))
    for name, e in EXPRS.items():
        f = sp.lambdify(s, e, "mpmath")
        vals = [repr(float(f(mp.mpf(g)))) for g in GRID]
        limit = sp.limit(e, s, 0)
        print(f"pub const {name.upper()}_REF: [f64; {len(GRID)}] = [{', '.join(vals)}];")
        print(f"pub const {name.upper()}_LIMIT: f64 = {repr(float(limit))}; // {limit}")


if __name__ == "__main__":
    {"series": series, "reference": reference}[sys.argv[1]]()
