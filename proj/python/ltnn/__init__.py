"""Exact compilation of piecewise functions into threshold networks, and certified global ERM."""

from fractions import Fraction

from . import _ltnn
from ._ltnn import ParseError, RefusalError, __version__

__all__ = [
    "ParseError",
    "RefusalError",
    "compile",
    "count_collections",
    "count_separable",
    "evaluate",
    "generate",
    "train",
    "verify",
]


def _text(q):
    if isinstance(q, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return str(Fraction(q))


def _points(points):
    return [[_text(v) for v in p] for p in points]


def compile(spec, mode="exact", validate=True):
    """Compile a function-spec JSON string. Returns the report as a dict."""
    return _ltnn.compile(spec, mode, validate)


def train(points, labels, widths, shortcut=False, loss="abs", symmetry_reduction=True, output_bias=False, threads=1):
    """Certified global ERM. The optimum comes back as a Fraction."""
    r = _ltnn.train(_points(points), [_text(y) for y in labels], list(widths), shortcut, loss, symmetry_reduction,
                    output_bias, threads)
    r["optimum"] = Fraction(r["optimum"])
    r["total_loss"] = Fraction(r["total_loss"])
    return r


def evaluate(network, points):
    return [Fraction(v) for v in _ltnn.evaluate(network, _points(points))]


def verify(network, spec, samples=10000, seed=0, open_cells=False):
    return _ltnn.verify(network, spec, samples, seed, open_cells)


def count_separable(points):
    return _ltnn.count_separable(_points(points))


def count_collections(m, cap=4):
    return _ltnn.count_collections(m, cap)


def generate(kind, n):
    return _ltnn.generate(kind, n)
