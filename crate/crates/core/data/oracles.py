"""Regenerate golden.json from independent mpmath evaluations.

Every value here is computed from the defining integrals or the raw
Habiro-Le sum at 40 significant digits, without reusing any of the series
or reductions of the Rust implementation.

    python3 oracles.py > golden.json
"""

import json
import math

from mpmath import mp, mpf, quad, log, sin, sinh, cos, cosh, acos, acosh, pi, exp, fsum

mp.dps = 40


def lam(x):
    """-int_0^x log|2 sin t| dt, splitting at the zeros of sin."""
    x = mpf(x)
    if x == 0:
        return mpf(0)
    sgn = 1 if x > 0 else -1
    x = abs(x)
    pts = [mpf(0)]
    k = 1
    while k * pi < x:
        pts.append(k * pi)
        k += 1
    pts.append(x)
    return -sgn * quad(lambda t: log(abs(2 * sin(t))), pts)


def gamma_h(z):
    return quad(lambda t: log(2 * sinh(t)), [0, mpf(z)])


def theta(r):
    return acos(cos(2 * pi * r) - mpf(1) / 2)


def phi(r):
    return acos(cos(2 * pi * r) + mpf(1) / 2)


def v(r):
    r = mpf(r)
    t = theta(r)
    return lam(pi * r + t / 2) - lam(pi * r - t / 2)


def w(r):
    r = mpf(r)
    p = phi(r)
    return v(r) + lam(pi * r + p / 2) - lam(pi * r - p / 2)


def circular_sum(r, n):
    c0 = 2 * cos(2 * pi * r)
    f, total = mpf(1), mpf(1)
    for j in range(1, n):
        f *= c0 - 2 * cos(2 * pi * r * j / n)
        total += f
    return total


def product_growth(r, n):
    c0 = 2 * cos(2 * pi * r)
    acc, best = mpf(0), mpf(0)
    for j in range(1, n):
        acc += log(abs(c0 - 2 * cos(2 * pi * r * j / n)))
        best = max(best, acc)
    return 2 * pi * best / n


def imaginary_log_growth(s, n):
    a = 2 * pi * s
    c0 = 2 * cosh(a)
    acc, logs = mpf(0), [mpf(0)]
    for j in range(1, n):
        acc += log(c0 - 2 * cosh(a * j / n))
        logs.append(acc)
    m = max(logs)
    return (m + log(fsum(exp(l - m) for l in logs))) / n


def entry(name, function, args, value, tolerance, oracle):
    return {
        "name": name,
        "function": function,
        "args": args,
        "value": float(value),
        "tolerance": tolerance,
        "oracle": oracle,
    }


def main():
    quad_lam = "adaptive quadrature of -int log|2 sin t| (mpmath, 40 digits)"
    quad_gam = "adaptive quadrature of int log(2 sinh t) (mpmath, 40 digits)"
    direct = "direct product-sum of the Habiro-Le terms (mpmath, 40 digits)"
    e = [
        entry("lobachevsky at pi/6", "lobachevsky", {"x": math.pi / 6}, lam(math.pi / 6), 1e-12, quad_lam),
        entry("lobachevsky at 1.3", "lobachevsky", {"x": 1.3}, lam(1.3), 1e-12, quad_lam),
        entry("hyperbolic gamma at 1", "hyperbolic_gamma", {"z": 1.0}, gamma_h(1), 1e-12, quad_gam),
        entry("hyperbolic phi at 1", "phi_hyperbolic", {"s": 1.0}, acosh(cosh(2 * pi) - mpf(1) / 2), 1e-12,
              "arccosh(cosh(2 pi) - 1/2) (mpmath, 40 digits)"),
        entry("vhat at 1", "vhat", {"r": 1.0}, 2 * v(1), 1e-9, quad_lam),
        entry("vhat at 9/10", "vhat", {"r": 0.9}, 2 * v(mpf(0.9)) / mpf(0.9), 1e-12, quad_lam),
        entry("vhat at 5/6", "vhat", {"r": 5 / 6}, 2 * v(mpf(5 / 6)) / mpf(5 / 6), 1e-12, quad_lam),
        entry("V at 1", "appendix_v", {"r": 1.0}, v(1), 1e-12, quad_lam),
        entry("delta at 0.8", "delta_gap", {"r": 0.8}, w(mpf(0.8)), 1e-12, quad_lam),
        entry("delta at 1.2", "delta_gap", {"r": 1.2}, w(mpf(1.2)), 1e-12, quad_lam),
        entry("dV at 0.9", "appendix_dv", {"r": 0.9},
              2 * pi * log(abs(2 * sin(pi * mpf(0.9) - theta(mpf(0.9)) / 2))), 1e-11,
              "closed form 2 pi log|2 sin(pi r - theta/2)| (mpmath, 40 digits)"),
        entry("cone volume at pi/3", "cone_manifold_volume", {"angle": math.pi / 3},
              quad(lambda t: acosh(max(1 + cos(t) - cos(2 * t), mpf(1))), [pi / 3, 2 * pi / 3]), 1e-11,
              "int_alpha^(2pi/3) arccosh(1 + cos t - cos 2t) dt (mpmath, 40 digits)"),
        entry("imaginary growth at 1", "imaginary_growth", {"s": 1.0},
              (2 * gamma_h(pi + acosh(cosh(2 * pi) - mpf(1) / 2) / 2)
               - 2 * gamma_h(pi - acosh(cosh(2 * pi) - mpf(1) / 2) / 2)) / (2 * pi), 1e-12, quad_gam),
        entry("J at r=1, N=3", "jones_value", {"r": "1", "n": 3}, circular_sum(1, 3), 1e-9, direct),
        entry("growth at r=1, N=2000", "jones_log_growth", {"r": "1", "n": 2000},
              2 * pi * log(abs(circular_sum(1, 2000))) / 2000, 1e-9, direct),
        entry("growth at r=9/10, N=91", "jones_log_growth", {"r": "9/10", "n": 91},
              2 * pi * log(abs(circular_sum(mpf(9) / 10, 91))) / 91, 1e-9, direct),
        entry("growth at r=9/10, N=901", "jones_log_growth", {"r": "9/10", "n": 901},
              2 * pi * log(abs(circular_sum(mpf(9) / 10, 901))) / 901, 1e-9, direct),
        entry("J at r=9/10, N=90", "jones_value", {"r": "9/10", "n": 90},
              circular_sum(mpf(9) / 10, 90), 1e-9, direct),
        entry("product growth at r=1, N=10^6", "product_growth", {"r": "1", "n": 1000000},
              product_growth(1, 10**6), 1e-9, "running log-product maximum (mpmath, 40 digits)"),
        entry("imaginary log growth at s=1, N=10^5", "imaginary_log_growth", {"s": 1.0, "n": 100000},
              imaginary_log_growth(mpf(1), 10**5), 1e-9, "log-sum-exp of the exact log-products (mpmath, 40 digits)"),
    ]
    print(json.dumps({"entries": e}, indent=2))


if __name__ == "__main__":
    main()
