"""Exact scalars, sparse vectors and tensor squares/cubes over countable bases.

Scalars are rationals (``fractions.Fraction``), so every equality test in the
package is exact.  Basis symbols are small tuples ``(tag, index)`` where the
tag names the carrier space ("t" for F[t] and its Laurent extension, "e" for
abstract finite bases, "Y" for the t^n (x) e_ij basis of F[t] (x) M_N).  The
tag keeps different carriers from being mixed silently.

Vectors and tensors are finite maps from (tuples of) basis symbols to nonzero
scalars; zero coefficients are pruned eagerly so structural equality equals
mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def S(x):
    """Coerce strings like "3/2" to an exact scalar; ints pass through
    unchanged since integer arithmetic is already exact (and faster)."""
    return x if isinstance(x, (int, Fraction)) else Fraction(x)


# ---------------------------------------------------------------------------
# basis symbols

def tsym(n, tag="t"):
    """Monomial t^n (n may be negative for the Laurent extension)."""
    return (tag, n)


def esym(i, tag="e"):
    """Abstract finite basis vector e_i (1-based, matching the usual e_1..e_n)."""
    return (tag, i)


def ysym(n, i, j, tag="Y"):
    """Basis element t^n (x) e_ij of F[t] (x) M_N(F)."""
    if n < 0 or i < 1 or j < 1:
        raise ValueError("ysym indices out of range: %r" % ((n, i, j),))
    return (tag, (n, i, j))


def sym_sort_key(sym):
    tag, idx = sym
    if isinstance(idx, tuple):
        return (tag, 1) + idx
    return (tag, 0, idx)


def key_sort_key(key):
    # key is a tuple of symbols (tensor slot order preserved)
    return tuple(sym_sort_key(s) for s in key)


# ---------------------------------------------------------------------------
# sparse linear combinations

def _pruned(terms):
    return {k: c for k, c in terms.items() if c}


class _SparseMap:
    """Shared machinery for Vec / Tensor2 / Tensor3."""

    __slots__ = ("terms",)
    arity = None

    def __init__(self, terms=None):
        self.terms = _pruned(terms) if terms else {}

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = S(a)
        if not a:
            return type(self)()
        return type(self)({k: a * c for k, c in self.terms.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def items(self):
        return self.terms.items()

    def coeff(self, key):
        return self.terms.get(key, ZERO)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self._key_order(kv[0]))

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, dict(self.sorted_items()))


class Vec(_SparseMap):
    arity = 1

    @staticmethod
    def _key_order(k):
        return sym_sort_key(k)

    @classmethod
    def basis(cls, sym):
        return cls({sym: ONE})

    def space_tags(self):
        return {s[0] for s in self.terms}


class Tensor2(_SparseMap):
    arity = 2
    _key_order = staticmethod(key_sort_key)

    @classmethod
    def pure(cls, a_sym, b_sym, coeff=ONE):
        coeff = S(coeff)
        return cls({(a_sym, b_sym): coeff}) if coeff else cls()

    def permute(self, sigma=(2, 1)):
        return tensor_permute(self, sigma)


class Tensor3(_SparseMap):
    arity = 3
    _key_order = staticmethod(key_sort_key)

    @classmethod
    def pure(cls, a_sym, b_sym, c_sym, coeff=ONE):
        coeff = S(coeff)
        return cls({(a_sym, b_sym, c_sym): coeff}) if coeff else cls()


def tensor_permute(u, sigma):
    """Permute tensor factors: the factor in slot i moves to slot sigma(i).

    sigma is given one-based as a tuple, e.g. (2, 1) transposes a Tensor2 and
    (2, 1, 3) swaps the first two slots of a Tensor3.
    """
    if not isinstance(u, (Tensor2, Tensor3)):
        raise TypeError("tensor_permute expects Tensor2 or Tensor3")
    k = u.arity
    if sorted(sigma) != list(range(1, k + 1)):
        raise ValueError("sigma %r is not a permutation of 1..%d" % (sigma, k))
    out = {}
    for key, c in u.terms.items():
        new = [None] * k
        for i, s in enumerate(key):
            new[sigma[i] - 1] = s
        out[tuple(new)] = out.get(tuple(new), 0) + c
    return type(u)(out)


SWAP12 = (2, 1)
SWAP12_3 = (2, 1, 3)
SWAP23_3 = (1, 3, 2)


# ---------------------------------------------------------------------------
# products across arities

def outer(a, b):
    """Tensor product: Vec x Vec -> Tensor2, Vec x Tensor2 -> Tensor3,
    Tensor2 x Vec -> Tensor3 (slot order preserved)."""
    if isinstance(a, Vec) and isinstance(b, Vec):
        cls, mk = Tensor2, lambda ka, kb: (ka, kb)
    elif isinstance(a, Vec) and isinstance(b, Tensor2):
        cls, mk = Tensor3, lambda ka, kb: (ka,) + kb
    elif isinstance(a, Tensor2) and isinstance(b, Vec):
        cls, mk = Tensor3, lambda ka, kb: ka + (kb,)
    else:
        raise TypeError("unsupported outer product %s x %s"
                        % (type(a).__name__, type(b).__name__))
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out[mk(ka, kb)] = ca * cb
    return cls(out)


def check_same_tags(*values):
    tags = set()
    for v in values:
        for key in v.terms:
            if isinstance(key, tuple) and key and isinstance(key[0], tuple):
                tags.update(s[0] for s in key)
            else:
                tags.add(key[0])
    if len(tags) > 1:
        raise ValueError("mixing carrier spaces %s without an explicit embedding"
                         % sorted(tags))
