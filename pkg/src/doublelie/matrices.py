"""Finitary infinite matrices and locally finite operators.

A finitary matrix has finitely many nonzero entries; these play the role of
the two-sided ideal inside the algebra of locally finite operators.  A locally
finite operator has finitely many nonzero entries in every row and in every
column; all catalog operators are supported on finitely many slope-one
diagonals, so the canonical representation used here is

    {offset: sorted disjoint segments (lo, hi, coeff)}

where offset = column - row, and a segment contributes coeff * e_{r, r+offset}
for every row r with lo <= r <= hi.  lo = None means the segment extends to
-infinity (integers domain only) and hi = None means +infinity.  Point entries
are length-one segments, so a single normal form covers both the finitary part
and the diagonal "rays", and structural equality equals mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ONE, S, Vec

_INF = float("inf")


class Domain:
    """Index domain for matrix rows/columns: naturals, integers or finite(n)."""

    __slots__ = ("kind", "size")

    def __init__(self, kind, size=None):
        if kind not in ("naturals", "integers", "finite"):
            raise ValueError("unknown index domain %r" % kind)
        if kind == "finite" and (size is None or size < 1):
            raise ValueError("finite domain needs a positive size")
        self.kind = kind
        self.size = size if kind == "finite" else None

    @classmethod
    def naturals(cls):
        return _NATURALS

    @classmethod
    def integers(cls):
        return _INTEGERS

    @classmethod
    def finite(cls, n):
        return cls("finite", n)

    def __eq__(self, other):
        return (isinstance(other, Domain) and self.kind == other.kind
                and self.size == other.size)

    def __hash__(self):
        return hash((self.kind, self.size))

    def __repr__(self):
        return "finite(%d)" % self.size if self.kind == "finite" else self.kind

    def contains(self, i):
        if self.kind == "integers":
            return True
        if self.kind == "naturals":
            return i >= 0
        return 0 <= i < self.size

    def row_bounds(self, offset):
        """Allowed row range (lo, hi) for a diagonal at the given offset;
        None stands for the corresponding infinity.  Returns None when the
        diagonal misses the domain entirely."""
        if self.kind == "integers":
            return (None, None)
        lo = max(0, -offset)
        if self.kind == "naturals":
            return (lo, None)
        hi = min(self.size - 1, self.size - 1 - offset)
        return (lo, hi) if lo <= hi else None

    def allows_infinite(self):
        return self.kind != "finite"


_NATURALS = Domain("naturals")
_INTEGERS = Domain("integers")


def _norm_segments(raw):
    """Normalize possibly-overlapping segments into a canonical tuple of
    disjoint, sorted, maximal segments with nonzero coefficients."""
    segs = []
    for lo, hi, c in raw:
        if not c:
            continue
        lo = -_INF if lo is None else lo
        hi = _INF if hi is None else hi
        if lo <= hi:
            segs.append((lo, hi, c))
    if not segs:
        return ()
    points = set()
    for lo, hi, _ in segs:
        points.add(lo)
        points.add(hi + 1 if hi != _INF else _INF)
    pts = sorted(points)
    out = []
    for k, p in enumerate(pts):
        if p == _INF:
            break
        q = pts[k + 1] if k + 1 < len(pts) else _INF
        coeff = sum(c for lo, hi, c in segs if lo <= p <= hi)
        if coeff:
            out.append((p, q - 1 if q != _INF else _INF, coeff))
    merged = []
    for lo, hi, c in out:
        if merged and merged[-1][2] == c and merged[-1][1] + 1 == lo:
            merged[-1] = [merged[-1][0], hi, c]
        else:
            merged.append([lo, hi, c])
    return tuple((None if lo == -_INF else lo, None if hi == _INF else hi, c)
                 for lo, hi, c in merged)


def _clip_segment(seg, bounds):
    if bounds is None:
        return None
    lo, hi, c = seg
    blo, bhi = bounds
    nlo = lo if blo is None else (blo if lo is None else max(lo, blo))
    nhi = hi if bhi is None else (bhi if hi is None else min(hi, bhi))
    if nlo is not None and nhi is not None and nlo > nhi:
        return None
    return (nlo, nhi, c)


def _seg_contains(seg, r):
    lo, hi, _ = seg
    return (lo is None or lo <= r) and (hi is None or r <= hi)


class FinitaryMatrix:
    """Infinite matrix with finite support, stored as {(row, col): coeff}."""

    __slots__ = ("domain", "entries")

    def __init__(self, entries=None, domain=_NATURALS):
        self.domain = domain
        ents = {}
        for (i, j), c in (entries or {}).items():
            if not c:
                continue
            if not (domain.contains(i) and domain.contains(j)):
                raise ValueError("entry (%d, %d) outside domain %r" % (i, j, domain))
            ents[(i, j)] = S(c)
        self.entries = ents

    @classmethod
    def unit(cls, i, j, domain=_NATURALS, coeff=ONE):
        return cls({(i, j): coeff}, domain)

    @classmethod
    def zero(cls, domain=_NATURALS):
        return cls({}, domain)

    def is_zero(self):
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return (isinstance(other, FinitaryMatrix) and self.domain == other.domain
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.domain, frozenset(self.entries.items())))

    def __repr__(self):
        items = sorted(self.entries.items())
        return "FinitaryMatrix(%r, %r)" % (items, self.domain)

    def entry(self, i, j):
        return self.entries.get((i, j), 0)

    def __add__(self, other):
        _need_same_domain(self, other)
        out = dict(self.entries)
        for k, c in other.entries.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return FinitaryMatrix(out, self.domain)

    def __neg__(self):
        return FinitaryMatrix({k: -c for k, c in self.entries.items()}, self.domain)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = S(a)
        return FinitaryMatrix({k: a * c for k, c in self.entries.items()}, self.domain)

    def __rmul__(self, a):
        return self.scale(a)

    def transpose(self):
        return FinitaryMatrix({(j, i): c for (i, j), c in self.entries.items()},
                              self.domain)

    def as_operator(self):
        segs = {}
        for (i, j), c in self.entries.items():
            segs.setdefault(j - i, []).append((i, i, c))
        return LocallyFiniteOperator(segs, self.domain)

    def apply(self, v, tag=None):
        return self.as_operator().apply(v, tag)

    def support_rows(self):
        return {i for i, _ in self.entries}

    def support_cols(self):
        return {j for _, j in self.entries}


class LocallyFiniteOperator:
    """Operator supported on finitely many diagonals, finitely many segments
    per diagonal.  Every row and every column then has at most one entry per
    diagonal, so local finiteness is structural."""

    __slots__ = ("domain", "segs")

    def __init__(self, segs=None, domain=_NATURALS):
        self.domain = domain
        norm = {}
        for offset, raw in (segs or {}).items():
            bounds = domain.row_bounds(offset)
            clipped = []
            for seg in raw:
                if (seg[0] is None or seg[1] is None) and not domain.allows_infinite():
                    raise ValueError("infinite ray in finite domain")
                cut = _clip_segment(seg, bounds)
                if cut is not None:
                    clipped.append(cut)
            canon = _norm_segments(clipped)
            if canon:
                for lo, hi, _ in canon:
                    if lo is None and domain.kind != "integers":
                        raise ValueError(
                            "backward-infinite ray requires the integers domain")
                norm[offset] = canon
        self.segs = norm

    @classmethod
    def zero(cls, domain=_NATURALS):
        return cls({}, domain)

    @classmethod
    def ray(cls, coeff, row0, col0, length=None, domain=_NATURALS, back=False):
        """coeff * (e_{row0,col0} + e_{row0+1,col0+1} + ...); length None means
        a forward-infinite ray, or with back=True a backward-infinite one
        ending at (row0, col0)."""
        offset = col0 - row0
        if length is None:
            seg = (None, row0, coeff) if back else (row0, None, coeff)
        else:
            if length < 0:
                raise ValueError("ray length must be nonnegative")
            if length == 0:
                return cls({}, domain)
            seg = (row0, row0 + length - 1, coeff)
        return cls({offset: [seg]}, domain)

    @classmethod
    def unit(cls, i, j, domain=_NATURALS, coeff=ONE):
        return cls({j - i: [(i, i, coeff)]}, domain)

    def is_zero(self):
        return not self.segs

    def __bool__(self):
        return bool(self.segs)

    def __eq__(self, other):
        return (isinstance(other, LocallyFiniteOperator)
                and self.domain == other.domain and self.segs == other.segs)

    def __hash__(self):
        return hash((self.domain, tuple(sorted(self.segs.items()))))

    def __repr__(self):
        return "LocallyFiniteOperator(%r, %r)" % (
            dict(sorted(self.segs.items())), self.domain)

    def entry(self, i, j):
        for seg in self.segs.get(j - i, ()):
            if _seg_contains(seg, i):
                return seg[2]
        return 0

    def row(self, i):
        """Finite dict {col: coeff} of row i."""
        out = {}
        for offset, segs in self.segs.items():
            for seg in segs:
                if _seg_contains(seg, i):
                    out[i + offset] = seg[2]
                    break
        return out

    def col(self, j):
        """Finite dict {row: coeff} of column j."""
        out = {}
        for offset, segs in self.segs.items():
            r = j - offset
            for seg in segs:
                if _seg_contains(seg, r):
                    out[r] = seg[2]
                    break
        return out

    def __add__(self, other):
        _need_same_domain(self, other)
        segs = {}
        for src in (self.segs, other.segs):
            for offset, ss in src.items():
                segs.setdefault(offset, []).extend(ss)
        return LocallyFiniteOperator(segs, self.domain)

    def __neg__(self):
        return LocallyFiniteOperator(
            {o: [(lo, hi, -c) for lo, hi, c in ss] for o, ss in self.segs.items()},
            self.domain)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = S(a)
        if not a:
            return LocallyFiniteOperator.zero(self.domain)
        return LocallyFiniteOperator(
            {o: [(lo, hi, a * c) for lo, hi, c in ss] for o, ss in self.segs.items()},
            self.domain)

    def __rmul__(self, a):
        return self.scale(a)

    def transpose(self):
        """Mirror across the main diagonal: the entry at (i, j) moves to
        (j, i), so a diagonal at offset o becomes one at -o with its row
        window shifted by +o."""
        segs = {}
        for offset, ss in self.segs.items():
            moved = []
            for lo, hi, c in ss:
                moved.append((None if lo is None else lo + offset,
                              None if hi is None else hi + offset, c))
            segs[-offset] = moved
        return LocallyFiniteOperator(segs, self.domain)

    def apply(self, v, tag=None):
        """Matrix-vector product on basis symbols u_q := (tag, q); the symbol
        tag is preserved unless an explicit output tag is given."""
        out = {}
        for (vtag, q), c in v.terms.items():
            otag = tag or vtag
            for offset, ss in self.segs.items():
                r = q - offset
                if not self.domain.contains(r):
                    continue
                for seg in ss:
                    if _seg_contains(seg, r):
                        key = (otag, r)
                        val = out.get(key, 0) + c * seg[2]
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
                        break
        return Vec(out)

    def apply_index(self, q):
        """Action on the single basis vector u_q as a dict {row: coeff}."""
        out = {}
        for offset, ss in self.segs.items():
            r = q - offset
            if not self.domain.contains(r):
                continue
            for seg in ss:
                if _seg_contains(seg, r):
                    out[r] = seg[2]
                    break
        return out

    def is_finitary(self):
        return all(lo is not None and hi is not None
                   for ss in self.segs.values() for lo, hi, _ in ss)

    def to_finitary(self):
        if not self.is_finitary():
            raise ValueError("operator has infinite rays; not finitary")
        ents = {}
        for offset, ss in self.segs.items():
            for lo, hi, c in ss:
                for r in range(lo, hi + 1):
                    ents[(r, r + offset)] = c
        return FinitaryMatrix(ents, self.domain)

    def project_to_block(self, n):
        """Finitary cut keeping entries with both indices in 0..n-1."""
        if n < 1:
            raise ValueError("block size must be positive")
        ents = {}
        for offset, ss in self.segs.items():
            bounds = Domain.finite(n).row_bounds(offset)
            for seg in ss:
                cut = _clip_segment(seg, bounds)
                if cut is None:
                    continue
                lo, hi, c = cut
                for r in range(lo, hi + 1):
                    if self.domain.contains(r) and self.domain.contains(r + offset):
                        ents[(r, r + offset)] = c
        return FinitaryMatrix(ents, _NATURALS if self.domain.kind != "finite"
                              else self.domain)

    def entries_in_window(self, lo, hi):
        """All ((row, col), coeff) with both indices in [lo, hi]."""
        out = []
        for offset, ss in self.segs.items():
            rlo = max(lo, lo - offset)
            rhi = min(hi, hi - offset)
            for seg in ss:
                cut = _clip_segment(seg, (rlo, rhi))
                if cut is None:
                    continue
                slo, shi, c = cut
                for r in range(slo, shi + 1):
                    out.append(((r, r + offset), c))
        return sorted(out)

    # ---- serialization ----------------------------------------------------

    def to_record(self):
        entries = []
        rays = []
        for offset in sorted(self.segs):
            for lo, hi, c in self.segs[offset]:
                if lo is not None and hi is not None and lo == hi:
                    entries.append([lo, lo + offset, str(c)])
                elif lo is None and hi is None:
                    rays.append([str(c), 0, offset, "biinf"])
                elif lo is None:
                    rays.append([str(c), hi, hi + offset, "backinf"])
                elif hi is None:
                    rays.append([str(c), lo, lo + offset, "inf"])
                else:
                    rays.append([str(c), lo, lo + offset, hi - lo + 1])
        return {"domain": repr(self.domain), "entries": entries, "rays": rays}

    @classmethod
    def from_record(cls, rec):
        domain = parse_domain(rec["domain"])
        segs = {}
        for i, j, c in rec.get("entries", []):
            segs.setdefault(j - i, []).append((i, i, Fraction(c)))
        for c, r0, c0, length in rec.get("rays", []):
            offset = c0 - r0
            c = Fraction(c)
            if length == "inf":
                seg = (r0, None, c)
            elif length == "backinf":
                seg = (None, r0, c)
            elif length == "biinf":
                seg = (None, None, c)
            else:
                seg = (r0, r0 + int(length) - 1, c)
            segs.setdefault(offset, []).append(seg)
        return cls(segs, domain)


def parse_domain(text):
    if text == "naturals":
        return _NATURALS
    if text == "integers":
        return _INTEGERS
    if text.startswith("finite(") and text.endswith(")"):
        return Domain.finite(int(text[len("finite("):-1]))
    raise ValueError("unknown domain %r" % text)


def _need_same_domain(a, b):
    if a.domain != b.domain:
        raise ValueError("index domain mismatch: %r vs %r" % (a.domain, b.domain))


# ---------------------------------------------------------------------------
# products

def _fin_mul_fin(a, b):
    out = {}
    cols = {}
    for (k, l), c in b.entries.items():
        cols.setdefault(k, []).append((l, c))
    for (i, k), c in a.entries.items():
        for l, d in cols.get(k, ()):
            key = (i, l)
            v = out.get(key, 0) + c * d
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return FinitaryMatrix(out, a.domain)


def _fin_mul_op(a, b):
    """finitary * locally-finite is finitary."""
    out = {}
    for (i, k), c in a.entries.items():
        for l, d in b.row(k).items():
            key = (i, l)
            v = out.get(key, 0) + c * d
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return FinitaryMatrix(out, a.domain)


def _op_mul_fin(a, b):
    """locally-finite * finitary is finitary."""
    out = {}
    for (k, l), d in b.entries.items():
        for r, c in a.col(k).items():
            key = (r, l)
            v = out.get(key, 0) + c * d
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return FinitaryMatrix(out, a.domain)


def _op_mul_op(a, b):
    """Product of two diagonal-segment operators, again one of them.

    A segment on offset o1 with rows [lo1, hi1] times a segment on offset o2
    with rows [lo2, hi2] contributes, on offset o1+o2, the rows
    [lo1, hi1] intersect [lo2 - o1, hi2 - o1]."""
    segs = {}
    for o1, ss1 in a.segs.items():
        for o2, ss2 in b.segs.items():
            for lo1, hi1, c1 in ss1:
                for lo2, hi2, c2 in ss2:
                    slo = None if lo2 is None else lo2 - o1
                    shi = None if hi2 is None else hi2 - o1
                    cut = _clip_segment((slo, shi, c1 * c2), (lo1, hi1))
                    if cut is not None:
                        segs.setdefault(o1 + o2, []).append(cut)
    return LocallyFiniteOperator(segs, a.domain)


def mul_mixed(a, b):
    """Matrix product; returns a FinitaryMatrix when either factor is
    finitary, otherwise a LocallyFiniteOperator."""
    _need_same_domain(a, b)
    a_fin = isinstance(a, FinitaryMatrix)
    b_fin = isinstance(b, FinitaryMatrix)
    if a_fin and b_fin:
        return _fin_mul_fin(a, b)
    if a_fin:
        return _fin_mul_op(a, b)
    if b_fin:
        return _op_mul_fin(a, b)
    out = _op_mul_op(a, b)
    return out.to_finitary() if out.is_finitary() else out


def trace_pair(x, y):
    """The trace form tr(xy) for finitary x and locally finite y; symmetric
    and associative whenever all products stay finitary."""
    if isinstance(x, LocallyFiniteOperator):
        x = x.to_finitary()
    if isinstance(y, FinitaryMatrix):
        total = 0
        for (k, l), c in x.entries.items():
            total += c * y.entry(l, k)
        return total
    total = 0
    for (k, l), c in x.entries.items():
        total += c * y.entry(l, k)
    return total


def commutator(a, b):
    """ab - ba for mixed operands (at least one finitary)."""
    return mul_mixed(a, b) - mul_mixed(b, a)


class StridedRayOperator:
    """coeff * sum of e_{row0+m*step, col0+m*step} over m >= 0.

    For step 1 this is an ordinary ray; steps >= 2 arise as preimages of the
    k-step difference maps, whose support walks a diagonal in jumps of k.
    Only the read-only protocol shared with LocallyFiniteOperator is offered
    (entry / row / col / apply / projection); these operators never need to be
    added or multiplied together."""

    __slots__ = ("coeff", "row0", "col0", "step", "domain")

    def __init__(self, coeff, row0, col0, step, domain=_NATURALS):
        if step < 1:
            raise ValueError("stride must be positive")
        if domain.kind == "finite":
            raise ValueError("infinite strided ray in finite domain")
        self.coeff = S(coeff)
        self.row0 = row0
        self.col0 = col0
        self.step = step
        self.domain = domain

    def __eq__(self, other):
        if isinstance(other, StridedRayOperator):
            return (self.coeff, self.row0, self.col0, self.step, self.domain) == \
                   (other.coeff, other.row0, other.col0, other.step, other.domain)
        return NotImplemented

    def __hash__(self):
        return hash((self.coeff, self.row0, self.col0, self.step, self.domain))

    def __repr__(self):
        return "StridedRayOperator(%r, %d, %d, step=%d)" % (
            self.coeff, self.row0, self.col0, self.step)

    def is_zero(self):
        return not self.coeff

    def is_finitary(self):
        return not self.coeff

    def entry(self, i, j):
        if j - i == self.col0 - self.row0 and i >= self.row0 \
                and (i - self.row0) % self.step == 0:
            return self.coeff
        return 0

    def row(self, i):
        if i >= self.row0 and (i - self.row0) % self.step == 0 and self.coeff:
            return {i + self.col0 - self.row0: self.coeff}
        return {}

    def col(self, j):
        if j >= self.col0 and (j - self.col0) % self.step == 0 and self.coeff:
            return {j - self.col0 + self.row0: self.coeff}
        return {}

    def apply_index(self, q):
        return self.col(q)

    def apply(self, v, tag=None):
        out = {}
        for (vtag, q), c in v.terms.items():
            for r, d in self.col(q).items():
                key = (tag or vtag, r)
                val = out.get(key, 0) + c * d
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return Vec(out)

    def transpose(self):
        return StridedRayOperator(self.coeff, self.col0, self.row0, self.step,
                                  self.domain)

    def project_to_block(self, n):
        ents = {}
        r, c = self.row0, self.col0
        while r < n and c < n:
            if r >= 0 and c >= 0:
                ents[(r, c)] = self.coeff
            r += self.step
            c += self.step
        return FinitaryMatrix(ents, _NATURALS)

    def entries_in_window(self, lo, hi):
        out = []
        r, c = self.row0, self.col0
        while r <= hi and c <= hi:
            if r >= lo and c >= lo:
                out.append(((r, c), self.coeff))
            r += self.step
            c += self.step
        return out


NATURALS = _NATURALS
INTEGERS = _INTEGERS
