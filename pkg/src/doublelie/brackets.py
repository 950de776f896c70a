"""Double brackets and their correspondence with Rota-Baxter operators.

A double bracket is a bilinear map V (x) V -> V (x) V given on basis pairs.
The correspondence with operators reads, on basis vectors u_p of V,

    <<u_p, u_q>> = sum_s u_s (x) R(e_{ps}) u_q,

with the trace-dual unit e_{ij}* = e_{ji}.  Checkers for anticommutativity,
the double Jacobi identity and the Leibniz rule evaluate everything exactly
over a window of basis elements.

The polynomial catalog comes from divided-difference closed forms: rational
expressions in x = t (x) 1 and y = 1 (x) t whose numerators are divisible by
x - y; the quotient, expanded, is the bracket value as a finite tensor.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Tensor2, Vec, esym, tsym, ysym
from .linalg import invert_matrix
from .matrices import Domain, FinitaryMatrix
from .rb import RBOperator, unit_range
from .report import VerificationReport


# ---------------------------------------------------------------------------
# carriers

class PolyCarrier:
    """Monomials t^n; n >= 0 for polynomials, any integer when laurent.

    product_shift selects the associative product t^a * t^b = t^{a+b+shift}.
    Shift 0 is the ordinary polynomial product; shift 1 is the non-unital
    product pulled back from t*F[t] along t^n -> t^{n+1}, which is the
    product for which the fourth catalog bracket obeys the Leibniz rule.
    """

    def __init__(self, laurent=False, product_shift=0):
        base = "laurent" if laurent else "poly"
        self.name = base if not product_shift else \
            "%s[shift %+d]" % (base, product_shift)
        self.laurent = laurent
        self.product_shift = product_shift

    def sym(self, q):
        if q < 0 and not self.laurent:
            raise ValueError("negative exponent in polynomial carrier")
        return tsym(q)

    def index(self, sym):
        return sym[1]

    def window_syms(self, window):
        lo = -window if self.laurent else 0
        return [tsym(n) for n in range(lo, window + 1)]

    def product(self, s1, s2):
        return Vec.basis(tsym(s1[1] + s2[1] + self.product_shift))

    def degree(self, sym):
        return sym[1]


class FiniteCarrier:
    """Abstract basis e_1..e_n; no associative product."""

    def __init__(self, n, name=None):
        self.n = n
        self.name = name or "finite(%d)" % n

    def sym(self, q):
        if not 0 <= q < self.n:
            raise ValueError("basis index %d out of range" % q)
        return esym(q + 1)

    def index(self, sym):
        return sym[1] - 1

    def window_syms(self, window=None):
        return [esym(i + 1) for i in range(self.n)]

    def product(self, s1, s2):
        return None

    def degree(self, sym):
        return 0


class MatrixPolyCarrier:
    """Basis t^n (x) e_{ij} of polynomials with a matrix factor of size N;
    the product is (t^a (x) e_{ij})(t^b (x) e_{kl}) =
    delta_{jk} t^{a+b} (x) e_{il}."""

    def __init__(self, N):
        self.N = N
        self.name = "poly(x)M_%d" % N

    def sym(self, n, i=1, j=1):
        return ysym(n, i, j)

    def window_syms(self, window):
        return [ysym(n, i, j) for n in range(window + 1)
                for i in range(1, self.N + 1) for j in range(1, self.N + 1)]

    def product(self, s1, s2):
        (a, i, j), (b, k, l) = s1[1], s2[1]
        if j != k:
            return Vec()
        return Vec.basis(ysym(a + b, i, l))

    def degree(self, sym):
        return sym[1][0]


class DoubleBracket:
    """Bilinear bracket given on basis pairs, with memoized evaluation.

    degree_shift bounds output degrees: every term of <<a, b>> has total
    degree at most deg(a) + deg(b) + degree_shift (None when the carrier is
    finite or no bound is declared)."""

    __slots__ = ("name", "carrier", "_eval_fn", "degree_shift", "_memo")

    def __init__(self, name, carrier, eval_fn, degree_shift=None):
        self.name = name
        self.carrier = carrier
        self._eval_fn = eval_fn
        self.degree_shift = degree_shift
        self._memo = {}

    def eval(self, s1, s2):
        key = (s1, s2)
        got = self._memo.get(key)
        if got is None:
            got = self._eval_fn(s1, s2)
            self._memo[key] = got
        return got

    def eval_items(self, s1, s2):
        """The bracket value as a tuple of (left_sym, right_sym, coeff)."""
        return tuple((a, b, c) for (a, b), c in self.eval(s1, s2).items())

    def eval_linear(self, va, vb):
        out = Tensor2()
        for s1, c1 in va.terms.items():
            for s2, c2 in vb.terms.items():
                out = out + self.eval(s1, s2).scale(c1 * c2)
        return out

    def __repr__(self):
        return "DoubleBracket(%r on %s)" % (self.name, self.carrier.name)


# ---------------------------------------------------------------------------
# divided-difference closed forms

def _divide_by_x_minus_y(num):
    """Exact quotient of a bivariate (Laurent) polynomial {(a, b): coeff} by
    x - y; raises if the division leaves a remainder."""
    num = {k: c for k, c in num.items() if c}
    if not num:
        return {}
    sa = min(a for a, _ in num)
    sb = min(b for _, b in num)
    shifted = {(a - sa, b - sb): c for (a, b), c in num.items()}
    cols = {}
    for (a, b), c in shifted.items():
        cols.setdefault(a, {})[b] = c
    top = max(cols)
    quot_cols = {}
    carry = {}
    for a in range(top - 1, -1, -1):
        # from (x - y) * Q = P: Q_a = P_{a+1} + y * Q_{a+1}
        cur = dict(cols.get(a + 1, {}))
        for b, c in carry.items():
            v = cur.get(b + 1, 0) + c
            if v:
                cur[b + 1] = v
            else:
                cur.pop(b + 1, None)
        if cur:
            quot_cols[a] = cur
        carry = cur
    rem = dict(cols.get(0, {}))
    for b, c in carry.items():
        v = rem.get(b + 1, 0) + c
        if v:
            rem[b + 1] = v
        else:
            rem.pop(b + 1, None)
    if rem:
        raise ValueError("numerator not divisible by x - y")
    return {(a + sa, b + sb): c for a, col in quot_cols.items()
            for b, c in col.items() if c}


_DD_VARIANTS = ("L1", "L2", "L3", "L4")


def _dd_numerator(variant, n, m):
    if variant == "L1":
        num = {}
        for (a, b), c in (((n + m, 0), 1), ((0, n + m), 1),
                          ((n, m), -1), ((m, n), -1)):
            num[(a, b)] = num.get((a, b), 0) + c
        return num
    if variant == "L2":
        num = {(n, m): -1}
        num[(m, n)] = num.get((m, n), 0) + 1
        return num
    if variant == "L3":
        num = {(n + 1, m + 1): 1}
        key = (m + 1, n + 1)
        num[key] = num.get(key, 0) - 1
        return num
    raise ValueError("unknown divided-difference variant %r" % variant)


def divided_difference(variant, n, m):
    """The bracket <<t^n, t^m>> for the four polynomial catalog brackets,
    obtained by an honest bivariate division by x - y (x = t (x) 1,
    y = 1 (x) t).  Negative exponents give the Laurent extension."""
    if variant not in _DD_VARIANTS:
        raise ValueError("unknown divided-difference variant %r" % variant)
    if variant == "L4":
        return divided_difference("L1", n + 1, m + 1).scale(-1)
    quot = _divide_by_x_minus_y(_dd_numerator(variant, n, m))
    return Tensor2({(tsym(a), tsym(b)): c for (a, b), c in quot.items()})


# ---------------------------------------------------------------------------
# catalog

_FINITE_TABLES = {
    "ex1": (2, {(0, 0): {((0, 1), 1), ((1, 0), -1)}}),
    "ex2": (2, {(0, 1): {((0, 0), 1)}, (1, 0): {((0, 0), -1)}}),
    "quiver": (4, {(2, 3): {((1, 0), 1)}, (3, 2): {((0, 1), -1)}}),
}


def catalog_bracket(name, **params):
    """Named brackets: L1..L4 (polynomial), their _laurent variants, ex1,
    ex2, quiver (finite), dY (N=...), zero."""
    laurent = name.endswith("_laurent")
    base = name[:-len("_laurent")] if laurent else name
    if base in _DD_VARIANTS:
        product_shift = 1 if base == "L4" else 0
        carrier = PolyCarrier(laurent=laurent, product_shift=product_shift)
        shift = 1 if base in ("L3", "L4") else -1

        def eval_fn(s1, s2):
            return divided_difference(base, s1[1], s2[1])

        return DoubleBracket(name, carrier, eval_fn, degree_shift=shift)
    if name in _FINITE_TABLES:
        n, table = _FINITE_TABLES[name]
        carrier = FiniteCarrier(n, name)

        def eval_fn(s1, s2):
            ents = table.get((s1[1] - 1, s2[1] - 1), ())
            return Tensor2({(esym(a + 1), esym(b + 1)): c
                            for (a, b), c in ents})

        return DoubleBracket(name, carrier, eval_fn)
    if name == "dY":
        N = params.get("N", 2)
        carrier = MatrixPolyCarrier(N)

        def eval_fn(s1, s2):
            (m, i, j), (n, k, l) = s1[1], s2[1]
            terms = {}
            for r in range(min(m, n)):
                for key, c in (((ysym(r, k, j), ysym(m + n - r - 1, i, l)), 1),
                               ((ysym(m + n - r - 1, k, j), ysym(r, i, l)), -1)):
                    v = terms.get(key, 0) + c
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)
            return Tensor2(terms)

        return DoubleBracket("dY(%d)" % N, carrier, eval_fn, degree_shift=-1)
    if name == "zero":
        carrier = params.get("carrier", PolyCarrier())
        return DoubleBracket("zero", carrier, lambda a, b: Tensor2(),
                             degree_shift=-1)
    raise ValueError("unknown bracket %r" % name)


CATALOG_BRACKET_NAMES = ("L1", "L2", "L3", "L4", "L1_laurent", "L2_laurent",
                         "L3_laurent", "L4_laurent", "ex1", "ex2", "quiver",
                         "dY")


# ---------------------------------------------------------------------------
# operator <-> bracket correspondence

def _correspondence_carrier(R):
    if R.N > 1:
        return MatrixPolyCarrier(R.N)
    if R.domain.kind == "finite":
        return FiniteCarrier(R.domain.size)
    return PolyCarrier(laurent=(R.domain.kind == "integers"))


def bracket_from_rb(R, name=None, degree_shift=None):
    """The double bracket of an operator:
    <<u_p, u_q>> = sum_s u_s (x) R(e_{ps}) u_q.

    Needs a sound finite support hint for s; the Laurent operators have
    none (the sum over s is genuinely infinite), so they are rejected."""
    if R.support_hint is None:
        raise ValueError("operator %s has no finite support hint; its "
                         "correspondence sum does not terminate" % R.name)
    carrier = _correspondence_carrier(R)

    if R.N > 1:
        def eval_fn(s1, s2):
            (m, i, j), (n, k, l) = s1[1], s2[1]
            terms = {}
            for p in R.support_hint(m, n):
                for r, c in R.apply_image(m, p, n).items():
                    key = (ysym(p, k, j), ysym(r, i, l))
                    v = terms.get(key, 0) + c
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)
            return Tensor2(terms)
    else:
        def eval_fn(s1, s2):
            p, q = carrier.index(s1), carrier.index(s2)
            terms = {}
            for s in R.support_hint(p, q):
                for r, c in R.apply_image(p, s, q).items():
                    key = (carrier.sym(s), carrier.sym(r))
                    v = terms.get(key, 0) + c
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)
            return Tensor2(terms)

    return DoubleBracket(name or "<<%s>>" % R.name, carrier, eval_fn,
                         degree_shift)


def rb_from_bracket(B, dim, name=None):
    """Read the operator back off a finite-dimensional bracket: the
    coefficient of u_s (x) u_r in <<u_p, u_q>> is the (r, q) entry of
    R(e_{ps}).  Inverse of bracket_from_rb on finite carriers."""
    carrier = B.carrier
    domain = Domain.finite(dim)

    def image_fn(p, s):
        ents = {}
        ssym = carrier.sym(s)
        for q in range(dim):
            for (a, b), c in B.eval(carrier.sym(p), carrier.sym(q)).items():
                if a == ssym:
                    r = carrier.index(b)
                    ents[(r, q)] = ents.get((r, q), 0) + c
        return FinitaryMatrix(ents, domain).as_operator()

    return RBOperator(name or "R[%s]" % B.name, domain, image_fn,
                      lambda p, q: range(dim))


# ---------------------------------------------------------------------------
# axiom checkers

def _render_sym(sym):
    from .grammar import render_sym
    return render_sym(sym)


def check_anticommutativity(B, window=8):
    """<<a, b>> = -swap(<<b, a>>) on all window basis pairs."""
    params = {"window": window}
    syms = B.carrier.window_syms(window)
    for a in syms:
        for b in syms:
            if B.eval(a, b) + B.eval(b, a).permute() != Tensor2():
                ce = {"a": _render_sym(a), "b": _render_sym(b)}
                return VerificationReport.failure("anticommutativity", B.name,
                                                  ce, params)
    return VerificationReport.success("anticommutativity", B.name, params)


def jacobi_defect(B, a, b, c):
    """<<a,<<b,c>>>>_L - swap12(<<b,<<a,c>>>>_R) - <<<<a,b>>,c>>_L as a raw
    term map over symbol triples, using the extension conventions
    <<a, b(x)c>>_L = <<a,b>>(x)c,  <<a, b(x)c>>_R = swap12(b(x)<<a,c>>),
    <<a(x)b, c>>_L = move23(<<a,c>>(x)b)."""
    ev = B.eval_items
    J = {}
    for (b1, b2, cb) in ev(b, c):
        for (x, y, cx) in ev(a, b1):
            key = (x, y, b2)
            v = J.get(key, 0) + cb * cx
            if v:
                J[key] = v
            else:
                J.pop(key, None)
    for (x, y, cx) in ev(a, c):
        for (p, q, cp) in ev(b, y):
            key = (x, p, q)
            v = J.get(key, 0) - cx * cp
            if v:
                J[key] = v
            else:
                J.pop(key, None)
    for (x, y, cx) in ev(a, b):
        for (z1, z2, cz) in ev(x, c):
            key = (z1, y, z2)
            v = J.get(key, 0) - cx * cz
            if v:
                J[key] = v
            else:
                J.pop(key, None)
    return J


def check_jacobi(B, window=8):
    """Exact double Jacobi identity on all window basis triples."""
    params = {"window": window}
    syms = B.carrier.window_syms(window)
    for a in syms:
        for b in syms:
            for c in syms:
                defect = jacobi_defect(B, a, b, c)
                if defect:
                    key = min(defect)
                    ce = {"a": _render_sym(a), "b": _render_sym(b),
                          "c": _render_sym(c),
                          "defect_term": "%s (x) %s (x) %s -> %s" % (
                              _render_sym(key[0]), _render_sym(key[1]),
                              _render_sym(key[2]), defect[key])}
                    return VerificationReport.failure("jacobi", B.name, ce,
                                                      params)
    return VerificationReport.success("jacobi", B.name, params)


def _t2_mul_left(T, sym, carrier):
    out = Tensor2()
    for (a, b), c in T.items():
        prod = carrier.product(sym, a)
        for s, d in prod.terms.items():
            out = out + Tensor2({(s, b): c * d})
    return out


def _t2_mul_right(T, sym, carrier):
    out = Tensor2()
    for (a, b), c in T.items():
        prod = carrier.product(b, sym)
        for s, d in prod.terms.items():
            out = out + Tensor2({(a, s): c * d})
    return out


def check_leibniz(B, window=8):
    """<<a, bc>> = <<a,b>>c + b<<a,c>> with the outer action
    b (x (x) y) c = bx (x) yc, on window basis triples."""
    params = {"window": window}
    carrier = B.carrier
    syms = carrier.window_syms(window)
    if carrier.product(syms[0], syms[0]) is None:
        raise ValueError("carrier %s has no associative product"
                         % carrier.name)
    for a in syms:
        for b in syms:
            for c in syms:
                bc = carrier.product(b, c)
                lhs = B.eval_linear(Vec.basis(a), bc)
                rhs = _t2_mul_right(B.eval(a, b), c, carrier) \
                    + _t2_mul_left(B.eval(a, c), b, carrier)
                if lhs != rhs:
                    ce = {"a": _render_sym(a), "b": _render_sym(b),
                          "c": _render_sym(c)}
                    return VerificationReport.failure("leibniz", B.name, ce,
                                                      params)
    return VerificationReport.success("leibniz", B.name, params)


def check_bracket_relations(window=10):
    """The catalog cross-relations: the third bracket is -(t (x) t) times the
    second (slotwise left/right multiplication), and the fourth at (n, m) is
    minus the first at (n+1, m+1)."""
    params = {"window": window}
    for n in range(window + 1):
        for m in range(window + 1):
            l2 = divided_difference("L2", n, m)
            scaled = Tensor2({(tsym(a[1] + 1), tsym(b[1] + 1)): -c
                              for (a, b), c in l2.items()})
            if divided_difference("L3", n, m) != scaled:
                ce = {"relation": "third vs second", "n": n, "m": m}
                return VerificationReport.failure("bracket_relations",
                                                  "catalog", ce, params)
            if divided_difference("L4", n, m) != \
                    divided_difference("L1", n + 1, m + 1).scale(-1):
                ce = {"relation": "fourth vs first", "n": n, "m": m}
                return VerificationReport.failure("bracket_relations",
                                                  "catalog", ce, params)
    return VerificationReport.success("bracket_relations", "catalog", params)


def check_basis_independence(R, window, change):
    """The bracket does not depend on the choice of dual bases of the ideal:
    recompute it through a transformed basis f_j = sum_i change[j][i] e_i of
    the window's unit basis, with dual basis determined by the trace pairing,
    and compare with the direct formula."""
    params = {"window": window}
    units = [(a, b) for a in unit_range(R.domain, window)
             for b in unit_range(R.domain, window)]
    inv = invert_matrix(change)
    if inv is None:
        raise ValueError("singular change matrix")
    u = len(units)
    if len(change) != u:
        raise ValueError("change matrix size %d does not match %d window "
                         "units" % (len(change), u))
    # f_j* = sum_m gamma[j][m] e_{units[m]}* with gamma = (change^{-1})^T
    gamma = [[inv[m][j] for m in range(u)] for j in range(u)]
    B = bracket_from_rb(R)
    carrier = B.carrier
    idx = unit_range(R.domain, window)
    for p in idx:
        for q in idx:
            hint = R.support_hint(p, q)
            if any(s not in idx for s in hint):
                continue
            direct = B.eval(carrier.sym(p), carrier.sym(q))
            recomputed = {}
            for jj in range(u):
                # f_j(u_p): rows a of units (a, b) with b = p
                left = {}
                for i, (a, b) in enumerate(units):
                    if b == p and change[jj][i]:
                        left[a] = left.get(a, 0) + change[jj][i]
                if not left:
                    continue
                right = {}
                for m, (a, b) in enumerate(units):
                    if not gamma[jj][m]:
                        continue
                    for r, c in R.apply_image(b, a, q).items():
                        v = right.get(r, 0) + gamma[jj][m] * c
                        if v:
                            right[r] = v
                        else:
                            right.pop(r, None)
                for s, cl in left.items():
                    for r, cr in right.items():
                        key = (carrier.sym(s), carrier.sym(r))
                        v = recomputed.get(key, 0) + cl * cr
                        if v:
                            recomputed[key] = v
                        else:
                            recomputed.pop(key, None)
            if Tensor2(recomputed) != direct:
                ce = {"p": p, "q": q}
                return VerificationReport.failure("basis_independence",
                                                  R.name, ce, params)
    return VerificationReport.success("basis_independence", R.name, params)


def check_homomorphism(B, B2, phi, window=8):
    """(phi (x) phi) <<a, b>> = <<phi(a), phi(b)>> on window basis pairs;
    phi maps basis symbols of B's carrier to vectors over B2's carrier."""
    params = {"window": window}
    syms = B.carrier.window_syms(window)
    for a in syms:
        for b in syms:
            lhs = Tensor2()
            for (s1, s2), c in B.eval(a, b).items():
                for p1, c1 in phi[s1].terms.items():
                    for p2, c2 in phi[s2].terms.items():
                        lhs = lhs + Tensor2({(p1, p2): c * c1 * c2})
            rhs = B2.eval_linear(phi[a], phi[b])
            if lhs != rhs:
                ce = {"a": _render_sym(a), "b": _render_sym(b)}
                return VerificationReport.failure("homomorphism",
                                                  "%s->%s" % (B.name, B2.name),
                                                  ce, params)
    return VerificationReport.success("homomorphism",
                                      "%s->%s" % (B.name, B2.name), params)
