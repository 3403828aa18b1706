"""Link-invariant oracles: reduced Burau matrices and Alexander polynomials.

Two independent routes compute the one-variable Alexander polynomial of a
link, both exact over the integers:

* from a braid word, via the reduced Burau representation and the identity
  ``det(B(w) - I) = unit * Alexander * (1 + t + ... + t^(n-1))``;
* from a diagram, via the Wirtinger presentation and Fox derivatives.

Values are compared after normalization (lowest exponent 0, positive
leading coefficient), which quotients out the unit ambiguity.  For links of
more than one component both routes produce the one-variable polynomial
that carries the extra ``t - 1`` factor, so they agree on links as well as
knots.  Split links give 0.
"""

from __future__ import annotations

from .diagrams import Diagram, DiagramError, analyze
from .laurent import Laurent
from .words import ArtinWord, Word, bkl_to_artin

Matrix = list[list[Laurent]]


def _identity(n: int) -> Matrix:
    return [[Laurent.one() if i == j else Laurent.zero() for j in range(n)] for i in range(n)]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    out = [[Laurent.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = Laurent.zero()
            for x in range(k):
                if a[i][x].is_zero() or b[x][j].is_zero():
                    continue
                acc = acc + a[i][x] * b[x][j]
            out[i][j] = acc
    return out


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def determinant(m: Matrix) -> Laurent:
    """Fraction-free (Bareiss) determinant over Laurent polynomials.

    Every division in the elimination is exact, so the computation stays in
    integer Laurent polynomials throughout.
    """
    n = len(m)
    if n == 0:
        return Laurent.one()
    a = [row[:] for row in m]
    sign = 1
    prev = Laurent.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return Laurent.zero()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev)
            a[i][k] = Laurent.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


# ---------------------------------------------------------------------------
# Reduced Burau representation
# ---------------------------------------------------------------------------

def _burau_generator(n: int, i: int, sign: int) -> Matrix:
    """Reduced Burau matrix of the i-th Artin generator of B_n, size (n-1)."""
    m = _identity(n - 1)
    t = Laurent.t()
    tinv = Laurent.t(-1)
    one = Laurent.one()
    if n == 2:
        m[0][0] = Laurent.t(1, -1) if sign > 0 else Laurent.t(-1, -1)
        return m
    if sign > 0:
        if i == 1:
            m[0][0] = -t
            m[1][0] = one
        elif i == n - 1:
            m[n - 3][n - 2] = t
            m[n - 2][n - 2] = -t
        else:
            k = i - 1
            m[k - 1][k] = t
            m[k][k] = -t
            m[k + 1][k] = one
    else:
        if i == 1:
            m[0][0] = -tinv
            m[1][0] = tinv
        elif i == n - 1:
            m[n - 3][n - 2] = one
            m[n - 2][n - 2] = -tinv
        else:
            k = i - 1
            m[k - 1][k] = one
            m[k][k] = -tinv
            m[k + 1][k] = tinv
    return m


def burau_reduced(w: Word) -> Matrix:
    """Product of reduced Burau matrices in word order; identity for the empty word."""
    word = w if isinstance(w, ArtinWord) else bkl_to_artin(w)
    n = word.strands
    out = _identity(n - 1)
    for i, e in word.letters:
        out = _mat_mul(out, _burau_generator(n, i, e))
    return out


def alexander_from_braid(w: Word) -> Laurent:
    """Normalized Alexander polynomial of the closure of a braid word."""
    word = w if isinstance(w, ArtinWord) else bkl_to_artin(w)
    n = word.strands
    if n == 1:
        return Laurent.one()
    m = _mat_sub(burau_reduced(word), _identity(n - 1))
    det = determinant(m)
    if det.is_zero():
        return Laurent.zero()
    divisor = Laurent.from_list([1] * n)  # 1 + t + ... + t^(n-1)
    return det.divide_exact(divisor).normalized()


# ---------------------------------------------------------------------------
# Fox calculus on the Wirtinger presentation
# ---------------------------------------------------------------------------

def alexander_from_diagram(d: Diagram) -> Laurent:
    """Normalized Alexander polynomial of a diagram's link via Fox derivatives.

    Arcs between under-passes form the Wirtinger generators; each crossing
    contributes one relation.  All generators abelianize to t.  Deleting one
    relation and one generator leaves a square matrix whose determinant is
    the polynomial up to units.  Split configurations (free unknots next to
    crossings, or components that never pass under) give 0.
    """
    if not d.crossings:
        if d.unknots == 1:
            return Laurent.one()
        return Laurent.zero()
    if d.unknots:
        return Laurent.zero()
    st = analyze(d)

    # Wirtinger generators: merge the over pair at each crossing.
    from .diagrams import _UnionFind  # shared helper

    uf = _UnionFind(st.succ)
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        uf.union(b, dd)
    gens = sorted({uf.find(x) for x in st.succ})
    gen_index = {g: k for k, g in enumerate(gens)}
    c = len(d.crossings)
    if len(gens) != c:
        # More arcs than crossings: some component never passes under, so the
        # link splits and the polynomial vanishes.
        return Laurent.zero()

    t = Laurent.t()
    one = Laurent.one()
    rows: list[list[Laurent]] = []
    for idx, (a, b, cc, dd) in enumerate(d.crossings):
        over = uf.find(b)
        src = uf.find(a)
        dst = uf.find(cc)
        row = [Laurent.zero() for _ in range(c)]
        if st.signs[idx] > 0:
            # relation x_dst = x_over x_src x_over^{-1}
            row[gen_index[over]] = row[gen_index[over]] + (one - t)
            row[gen_index[src]] = row[gen_index[src]] + t
            row[gen_index[dst]] = row[gen_index[dst]] - one
        else:
            # relation x_dst = x_over^{-1} x_src x_over; row scaled by t
            row[gen_index[over]] = row[gen_index[over]] + (t - one)
            row[gen_index[src]] = row[gen_index[src]] + one
            row[gen_index[dst]] = row[gen_index[dst]] - t
        rows.append(row)

    minor = [row[1:] for row in rows[1:]]
    return determinant(minor).normalized()


def alexander_from_diagram_minor(d: Diagram, drop_row: int, drop_col: int) -> Laurent:
    """Same as :func:`alexander_from_diagram` with an explicit deleted row/column."""
    if not d.crossings:
        raise DiagramError("empty diagram has no Wirtinger matrix")
    st = analyze(d)
    from .diagrams import _UnionFind

    uf = _UnionFind(st.succ)
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        uf.union(b, dd)
    gens = sorted({uf.find(x) for x in st.succ})
    gen_index = {g: k for k, g in enumerate(gens)}
    c = len(d.crossings)
    if len(gens) != c:
        return Laurent.zero()
    t = Laurent.t()
    one = Laurent.one()
    rows = []
    for idx, (a, b, cc, dd) in enumerate(d.crossings):
        over, src, dst = uf.find(b), uf.find(a), uf.find(cc)
        row = [Laurent.zero() for _ in range(c)]
        if st.signs[idx] > 0:
            row[gen_index[over]] = row[gen_index[over]] + (one - t)
            row[gen_index[src]] = row[gen_index[src]] + t
            row[gen_index[dst]] = row[gen_index[dst]] - one
        else:
            row[gen_index[over]] = row[gen_index[over]] + (t - one)
            row[gen_index[src]] = row[gen_index[src]] + one
            row[gen_index[dst]] = row[gen_index[dst]] - t
        rows.append(row)
    minor = [
        [entry for j, entry in enumerate(row) if j != drop_col]
        for i, row in enumerate(rows)
        if i != drop_row
    ]
    return determinant(minor).normalized()
