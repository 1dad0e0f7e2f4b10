"""
Canonical bases of Iwahori-Hecke algebras of symmetric groups.

Everything happens over integer Laurent polynomials in v.  The standard
basis {H_w} satisfies H_s^2 = 1 + (v^-1 - v)H_s, and H_x H_y = H_{xy}
whenever lengths add.  The canonical basis element b_w is the unique
bar-invariant element H_w + sum_{x<w} h_{x,w} H_x with h_{x,w} in
v*Z[v]; its coefficients encode the classical polynomials P_{x,w} via

    h_{x,w}(v) = v^{l(w) - l(x)} * P_{x,w}(q)|_{q = v^-2}.

Two independent routes are implemented:

* :func:`kl_polynomial` runs the classical recursion over Bruhat order
  with a left-descent pivot and mu-coefficient corrections; the basis
  assembled from it is :func:`canonical_basis`.
* :func:`canonical_basis_by_bar_invariance` never touches the
  recursion: it builds candidates from products b_s * b_u, peels
  bar-symmetric corrections, and then *verifies* bar-invariance,
  unitriangularity and the positive-degree condition by direct
  computation in the algebra.

The second route certifies the first in the test suite; production
structure constants come from :func:`kl_structure_constants`.
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly
from .permutations import Permutation, all_permutations, bruhat_leq

__all__ = [
    "kl_polynomial",
    "mu_coefficient",
    "canonical_basis",
    "canonical_basis_by_bar_invariance",
    "kl_structure_constants",
]

PermKey = tuple[int, ...]
Vector = dict[PermKey, LaurentPoly]  # element of the algebra in the H basis

_V = LaurentPoly.var(1)
_VINV = LaurentPoly.var(-1)
_Q = LaurentPoly.var(1)  # the classical variable, in its own grading


@lru_cache(maxsize=None)
def _group(n: int) -> tuple[Permutation, ...]:
    return tuple(all_permutations(n))


@lru_cache(maxsize=None)
def _length(key: PermKey) -> int:
    return Permutation(key).length()


# ---------------------------------------------------------------------------
# classical recursion


def kl_polynomial(n: int, x: Permutation, w: Permutation) -> LaurentPoly:
    """The polynomial P_{x,w} for S_n, as a polynomial in q.

    Zero when x is not Bruhat-below w; otherwise constant term 1 and
    degree at most (l(w) - l(x) - 1)/2 for x < w (asserted).
    """
    if x.n != n or w.n != n:
        raise ValueError("permutation size does not match n")
    p = _kl(n, x.one_line, w.one_line)
    if x.one_line != w.one_line and p:
        assert 2 * p.max_exp() <= w.length() - x.length() - 1, (
            f"degree bound violated for P({x.one_line},{w.one_line})"
        )
    return p


@lru_cache(maxsize=None)
def _kl(n: int, x: PermKey, w: PermKey) -> LaurentPoly:
    if not _bruhat(x, w):
        return LaurentPoly.zero()
    if x == w:
        return LaurentPoly.one()
    pw = Permutation(w)
    s = pw.left_descents()[0]
    sw = pw.left_mul_simple(s).one_line
    px = Permutation(x)
    sx = px.left_mul_simple(s).one_line
    if _length(sx) > _length(x):
        # s-descent mismatch collapses the pair one step up
        return _kl(n, sx, w)
    result = _kl(n, sx, sw) + _Q * _kl(n, x, sw)
    for z in _group(n):
        zk = z.one_line
        if not (_bruhat(x, zk) and _bruhat(zk, sw)):
            continue
        if z.left_mul_simple(s).length() > z.length():
            continue
        m = mu_coefficient(n, z, Permutation(sw))
        if m:
            power = (_length(w) - _length(zk)) // 2
            result = result - LaurentPoly({power: m}) * _kl(n, x, zk)
    return result


@lru_cache(maxsize=None)
def _bruhat(x: PermKey, w: PermKey) -> bool:
    return bruhat_leq(Permutation(x), Permutation(w))


def mu_coefficient(n: int, z: Permutation, y: Permutation) -> int:
    """Coefficient of q^((l(y)-l(z)-1)/2) in P_{z,y}; zero unless the gap is odd."""
    gap = y.length() - z.length()
    if gap <= 0 or gap % 2 == 0:
        return 0
    return _kl(n, z.one_line, y.one_line).coeff((gap - 1) // 2)


# ---------------------------------------------------------------------------
# the H-basis algebra


def _mult_gen_right(vec: Vector, s: int) -> Vector:
    """vec * H_s."""
    out: dict[PermKey, LaurentPoly] = {}
    for w, c in vec.items():
        ws = Permutation(w).right_mul_simple(s).one_line
        out[ws] = out.get(ws, LaurentPoly.zero()) + c
        if _length(ws) < _length(w):
            out[w] = out.get(w, LaurentPoly.zero()) + (_VINV - _V) * c
    return {w: c for w, c in out.items() if c}


def _mult_gen_left(s: int, vec: Vector) -> Vector:
    """H_s * vec."""
    out: dict[PermKey, LaurentPoly] = {}
    for w, c in vec.items():
        sw = Permutation(w).left_mul_simple(s).one_line
        out[sw] = out.get(sw, LaurentPoly.zero()) + c
        if _length(sw) < _length(w):
            out[w] = out.get(w, LaurentPoly.zero()) + (_VINV - _V) * c
    return {w: c for w, c in out.items() if c}


def _add_scaled(acc: Vector, scale: LaurentPoly, vec: Vector) -> None:
    if not scale:
        return
    for w, c in vec.items():
        acc[w] = acc.get(w, LaurentPoly.zero()) + scale * c
        if not acc[w]:
            del acc[w]


def _vec_sub_scaled(acc: Vector, scale: LaurentPoly, vec: Vector) -> None:
    _add_scaled(acc, -scale, vec)


# ---------------------------------------------------------------------------
# canonical basis from the recursion


@lru_cache(maxsize=None)
def canonical_basis(n: int) -> dict[PermKey, Vector]:
    """b_w in the H basis, coefficients h_{x,w}(v), from kl_polynomial."""
    basis: dict[PermKey, Vector] = {}
    for w in _group(n):
        vec: Vector = {}
        lw = w.length()
        for x in _group(n):
            if not _bruhat(x.one_line, w.one_line):
                continue
            p = _kl(n, x.one_line, w.one_line)
            shift = lw - x.length()
            h = LaurentPoly({shift - 2 * e: c for e, c in p.coeffs.items()})
            if h:
                vec[x.one_line] = h
        basis[w.one_line] = vec
    return basis


# ---------------------------------------------------------------------------
# canonical basis by explicit bar-invariance (independent oracle)


@lru_cache(maxsize=None)
def _bar_of_standard(n: int) -> dict[PermKey, Vector]:
    """bar(H_w) for all w, by extending reduced words one letter at a time."""
    e = Permutation.identity(n).one_line
    out: dict[PermKey, Vector] = {e: {e: LaurentPoly.one()}}
    for w in _group(n):
        if w.one_line in out:
            continue
        s = w.right_descents()[0]
        u = w.right_mul_simple(s).one_line
        base = out[u]
        # bar(H_s) = H_s + (v - v^-1)
        stepped = _mult_gen_right(base, s)
        _add_scaled(stepped, _V - _VINV, base)
        out[w.one_line] = stepped
    return out


def bar_vector(n: int, vec: Vector) -> Vector:
    bar_h = _bar_of_standard(n)
    out: Vector = {}
    for w, c in vec.items():
        _add_scaled(out, c.bar(), bar_h[w])
    return out


@lru_cache(maxsize=None)
def canonical_basis_by_bar_invariance(n: int) -> dict[PermKey, Vector]:
    """Construct and certify the canonical basis inside the algebra.

    Each returned element is checked to be (a) unitriangular against
    the standard basis, (b) supported in strictly positive v-degrees
    off the top term, and (c) literally fixed by the bar involution.
    These three properties characterize the basis uniquely, so the
    output is correct independently of how candidates were produced.
    """
    e = Permutation.identity(n).one_line
    basis: dict[PermKey, Vector] = {e: {e: LaurentPoly.one()}}
    for w in _group(n):
        if w.one_line in basis:
            continue
        s = w.left_descents()[0]
        u = w.left_mul_simple(s).one_line
        # b_s * b_u = (H_s + v) b_u
        cand = _mult_gen_left(s, basis[u])
        _add_scaled(cand, _V, basis[u])
        # peel by decreasing length over the whole group: a correction at x
        # only disturbs strictly shorter terms, which are visited later
        for px in sorted(_group(n), key=lambda p: p.length(), reverse=True):
            x = px.one_line
            if x == w.one_line:
                continue
            c = cand.get(x)
            if c is None or not c or c.only_positive_exps():
                continue
            correction = c.nonpositive_part_symmetrized()
            _vec_sub_scaled(cand, correction, basis[x])
        assert cand.get(w.one_line) == LaurentPoly.one(), "candidate is not unitriangular"
        for x, c in cand.items():
            if x != w.one_line:
                assert c.only_positive_exps(), f"coefficient at {x} not in vZ[v]"
        assert bar_vector(n, cand) == cand, f"candidate for {w.one_line} not bar-invariant"
        basis[w.one_line] = cand
    return basis


# ---------------------------------------------------------------------------
# structure constants


@lru_cache(maxsize=None)
def kl_structure_constants(n: int) -> dict[tuple[PermKey, PermKey], Vector]:
    """All products b_x b_y expanded in the canonical basis.

    The value at (x, y) maps z to the Laurent polynomial h_{x,y,z}; all
    coefficients are nonnegative (positivity in type A), which is
    asserted because a violation here could only be an arithmetic bug.
    """
    basis = canonical_basis(n)
    group = _group(n)
    by_length = sorted(basis, key=_length, reverse=True)
    out: dict[tuple[PermKey, PermKey], Vector] = {}
    for x in group:
        bx = basis[x.one_line]
        # products b_x * H_u for every u, following the weak right order
        bx_h: dict[PermKey, Vector] = {group[0].one_line: dict(bx)}
        for u in group:
            if u.one_line in bx_h:
                continue
            s = u.right_descents()[0]
            parent = u.right_mul_simple(s).one_line
            bx_h[u.one_line] = _mult_gen_right(bx_h[parent], s)
        for y in group:
            prod: Vector = {}
            for u, h in basis[y.one_line].items():
                _add_scaled(prod, h, bx_h[u])
            coeffs: Vector = {}
            for z in by_length:
                c = prod.get(z)
                if c is None or not c:
                    continue
                coeffs[z] = c
                _vec_sub_scaled(prod, c, basis[z])
            assert not prod, "product failed to resolve in the canonical basis"
            for z, c in coeffs.items():
                assert all(v >= 0 for v in c.coeffs.values()), (
                    f"negative structure constant at ({x.one_line},{y.one_line},{z})"
                )
            out[(x.one_line, y.one_line)] = coeffs
    return out
