"""Exact width exponents; every rational comes back as a Fraction."""

from fractions import Fraction

from ._widthcalc import DomainError, RangeError, run_cli
from . import _widthcalc as _ext

__all__ = ["exponent", "regime", "finite", "run_cli", "DomainError", "RangeError"]


def _arg(v):
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass Fraction, int or 'a/b'")
    return str(v)


def _frac(s):
    return None if s is None else Fraction(s)


def exponent(p, r, q):
    out = _ext.exponent([_arg(x) for x in p], [_arg(x) for x in r], _arg(q))
    out["theta"] = _frac(out["theta"])
    out["alpha"] = [_frac(a) for a in out["alpha"]]
    out["s"] = _frac(out["s"])
    return out


def regime(p, r, q):
    out = _ext.regime([_arg(x) for x in p], [_arg(x) for x in r], _arg(q))
    out["thetas"] = {k: _frac(v) for k, v in out["thetas"].items()}
    out["exponent"] = _frac(out["exponent"])
    return out


def finite(N, n, q, balls):
    out = _ext.finite(N, n, _arg(q), [(_arg(p), _arg(nu)) for p, nu in balls])
    out["rational"] = _frac(out["rational"])
    return out
