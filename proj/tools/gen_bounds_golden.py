#!/usr/bin/env python3
"""Regenerate tests/golden/bounds.csv from plain float arithmetic.

Prints the table to stdout by default; pass --write to overwrite the
checked-in file.
"""

import argparse
import math
import pathlib

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden" / "bounds.csv"


def clamped_log(x):
    return max(math.log(x), 1.0)


def min_sparsity(q, r):
    for s in range(1, int(math.floor(q / math.e)) + 1):
        if s * math.log(q / s) >= r:
            return float(s)
    raise ValueError("infeasible")


def alon(eps, N):
    return math.log(N) / (eps * eps * math.log(1.0 / eps))


def jl(eps, n, m):
    return math.log(n) / (eps * clamped_log(m / math.log(n)))


def rip_sparsity(k, n, m):
    scale = k * math.log(n / k)
    return min(scale / clamped_log(m / scale), m)


def rip_rows(delta, k, n):
    return min(k * math.log(n / k) / delta + k / (delta * delta), n) / math.log(1.0 / delta)


def code_size(eps, k, n):
    return min(eps * eps * n, eps * k * math.log(eps * n / (2.0 * k)))


def rows():
    out = []
    qs = [10.0, 50.0, 100.0, 1e3, 1e4, 1e5, 1e6, 37.5, 250.0, 5e6]
    for i in range(20):
        q = qs[i % 10]
        r = [1.0, q / 10.0][i // 10] if i < 20 else 1.0
        if i >= 10:
            r = q / (4.0 + (i % 3))
        out.append(("min_sparsity_from_inequality", {"q": q, "r": r}, min_sparsity(q, r)))
    for i in range(20):
        eps = 0.02 + 0.023 * i
        N = 10.0 ** (1 + i % 7)
        out.append(("alon_rows_lower", {"eps": eps, "N": N}, alon(eps, N)))
    for i in range(20):
        n = 2.0 ** (10 + i)
        eps = 0.45 - 0.02 * i
        m = math.log(n) * (1.5 + 10.0 * i)
        out.append(("jl_sparsity_lower", {"eps": eps, "n": n, "m": m}, jl(eps, n, m)))
    for i in range(20):
        n = 10.0 ** (8 + i % 5) * (1 + i // 5)
        cap = n / (64.0 * math.log(n) ** 3)
        k = 2.0 + i
        m = k + (cap - k) * (0.05 + 0.045 * i)
        out.append(("rip_sparsity_lower", {"k": k, "n": n, "m": m}, rip_sparsity(k, n, m)))
    for i in range(20):
        n = 64.0 * (i + 1)
        delta = 0.5 - 0.015 * i
        k = 1.0 + (i % 6)
        out.append(("rip_rows_lower", {"delta": delta, "k": k, "n": n}, rip_rows(delta, k, n)))
    for i in range(20):
        eps = 0.05 + 0.0225 * i
        n = 400.0 + 100.0 * i
        k = 1.0 + (i % 5) * 2
        out.append(("code_size_exponents", {"eps": eps, "k": k, "n": n}, code_size(eps, k, n)))
    return out


def render():
    lines = ["formula,params,value"]
    for formula, params, value in rows():
        kv = ";".join(f"{k}={v!r}" for k, v in params.items())
        lines.append(f"{formula},{kv},{value!r}")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--write", action="store_true", help="overwrite the golden file")
    args = parser.parse_args()
    text = render()
    if args.write:
        GOLDEN.write_text(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
