"""Regenerate ``src/helmbem/specfun/_hankel_cheb.py``.

Piecewise Chebyshev coefficients of the smooth amplitude functions ``P_n`` and
``x Q_n`` defined by

    H_n(x) = sqrt(2/(pi x)) exp(i(x - n pi/2 - pi/4)) (P_n(x) + i Q_n(x)),

for n = 0, 1, as functions of ``v = 1/x^2`` on the intervals between
``BREAKS`` (the last one extends to infinity). Coefficients come from
interpolation at Chebyshev points in 40-digit arithmetic (needs mpmath).
"""

import pathlib

import mpmath as mp

BREAKS = [6.0, 10.0, 18.0, 40.0]
DEGREES = [13, 11, 9, 7]

mp.mp.dps = 40


def amplitude(n, x):
    h = mp.hankel1(n, x)
    amp = mp.sqrt(2 / (mp.pi * x))
    z = h / amp * mp.exp(-1j * (x - n * mp.pi / 2 - mp.pi / 4))
    return z.real, z.imag * x


def interval(i):
    xa = mp.mpf(BREAKS[i])
    vb = 1 / xa**2
    va = 1 / mp.mpf(BREAKS[i + 1]) ** 2 if i + 1 < len(BREAKS) else mp.mpf(0)
    return va, vb


def coefficients(n, i):
    deg = DEGREES[i]
    va, vb = interval(i)
    m = deg + 1
    theta = [mp.pi * (j + mp.mpf(1) / 2) / m for j in range(m)]
    vals = []
    for th in theta:
        v = va + (mp.cos(th) + 1) / 2 * (vb - va)
        vals.append(amplitude(n, 1 / mp.sqrt(v)) if v > 0 else (mp.mpf(1), mp.mpf(0)))
    out = []
    for part in (0, 1):
        c = []
        for kk in range(m):
            s = mp.fsum(vals[j][part] * mp.cos(kk * theta[j]) for j in range(m)) * 2 / m
            c.append(s / 2 if kk == 0 else s)
        out.append([float(x) for x in c])
    return out


def main():
    out = pathlib.Path(__file__).resolve().parents[1] / "src/helmbem/specfun/_hankel_cheb.py"
    width = max(DEGREES) + 1
    lines = [
        '"""Generated by scripts/gen_hankel_cheb.py; do not edit."""',
        "",
        "import numpy as np",
        "",
        f"BREAKS = np.array({BREAKS!r})",
        f"NTERMS = np.array({[d + 1 for d in DEGREES]!r})",
        "# interval i maps v = 1/x^2 in [VA[i], VB[i]] onto [-1, 1]",
        f"VA = np.array({[float(interval(i)[0]) for i in range(len(BREAKS))]!r})",
        f"VB = np.array({[float(interval(i)[1]) for i in range(len(BREAKS))]!r})",
        "",
    ]
    tables = {"P0": [], "XQ0": [], "P1": [], "XQ1": []}
    for n in (0, 1):
        for i in range(len(BREAKS)):
            p, q = coefficients(n, i)
            tables[f"P{n}"].append(p + [0.0] * (width - len(p)))
            tables[f"XQ{n}"].append(q + [0.0] * (width - len(q)))
    for name, rows in tables.items():
        body = ",\n    ".join("[" + ", ".join(repr(v) for v in row) + "]" for row in rows)
        lines.append(f"{name} = np.array([\n    {body},\n])")
        lines.append("")
    out.write_text("\n".join(lines))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
