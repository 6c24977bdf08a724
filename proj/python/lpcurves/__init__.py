"""L^p-continuous curves with pathological pointwise behaviour.

Thin wrapper over the compiled core. Times and other exact quantities are
accepted as Fraction, int or "num/den" strings and returned as Fraction.
"""

from fractions import Fraction

from . import _core
from ._core import (
    DomainError,
    InfeasibleError,
    ParseError,
    SizingError,
    UnsupportedError,
    cauchy_certificate,
    oscillation,
)

__all__ = [
    "DomainError", "InfeasibleError", "ParseError", "SizingError", "UnsupportedError",
    "measure", "locate_gap", "eval1", "dx1", "slice1", "norm1", "distance1", "witness1",
    "q", "eval2", "norm2", "witness2", "oscillation", "cauchy_certificate",
    "egorov_extract", "lusin_slice", "table1", "fourier1", "sampled_modulus",
]


def _s(v):
    return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else str(v)


def _f(s):
    return Fraction(s)


def measure(parts):
    return _f(_core.measure([(_s(a), _s(b)) for a, b in parts]))


def locate_gap(stage, t):
    g = _core.locate_gap(stage, _s(t))
    return None if g is None else (int(g[0]), _f(g[1]), _f(g[2]))


def eval1(t, x, p=1.0, depth=6):
    """(value, tail_bound) of the curve-1 truncation at (t, x)."""
    return _core.eval1(_s(t), x, p, depth)


def dx1(t, x, p=1.0, depth=6):
    return _core.dx1(_s(t), x, p, depth)


def slice1(t, xs, p=1.0, depth=6):
    return _core.slice1(_s(t), list(xs), p, depth)


def norm1(stage, t, p=1.0):
    return _core.norm1(stage, _s(t), p)


def distance1(t, u, p=1.0, depth=6):
    return _core.distance1(_s(t), _s(u), p, depth)


def witness1(t, blocks=4, p=1.0, depth=6):
    """(epsilon, [(t_n, gap index, role), ...])."""
    eps, pts = _core.witness1(_s(t), blocks, p, depth)
    return eps, [(_f(a), int(g), role) for a, g, role in pts]


def q(m):
    return _f(_core.q(m))


def eval2(t, x, max_m=12):
    return _core.eval2(_s(t), _s(x), max_m)


def norm2(m, k, t, p=1.0):
    return _core.norm2(m, k, _s(t), p)


def witness2(T, t, stages=3):
    out = []
    for st in _core.witness2([(_s(a), _s(b)) for a, b in T], _s(t), stages):
        for key in ("q", "covered_measure", "certificate_bound"):
            st[key] = _f(st[key])
        st["k"] = int(st["k"])
        st["time_count"] = int(st["time_count"])
        st["runs"] = [(_f(a), _f(b), int(c)) for a, b, c in st["runs"]]
        out.append(st)
    return out


def egorov_extract(t_grid, ns, omega, eps, steps=3):
    return _core.egorov_extract(list(t_grid), list(ns), [list(r) for r in omega], eps, steps)


def lusin_slice(t_grid, x_grid, values, eps, steps=3):
    return _core.lusin_slice(list(t_grid), list(x_grid), [list(r) for r in values], eps, steps)


def table1(ts, xs, p=1.0, depth=6):
    return _core.table1([_s(t) for t in ts], list(xs), p, depth)


def fourier1(t, n, resolution=64, p=1.0, depth=6):
    return _core.fourier1(_s(t), n, resolution, p, depth)


def sampled_modulus(t, delta, samples=8, p=1.0, depth=6):
    return _core.sampled_modulus(_s(t), _s(delta), samples, p, depth)
