"""Canonical representatives of GL2(T_n)-orbits and the reduction pipeline.

A pair is canonical when A is diagonal with 0/1 entries, B is strictly
lower with 0/1 entries, every row holds exactly one nonzero entry across
[A|B], and the nonzero entries of B sit in pairwise distinct columns.
``canonicalize`` reduces a free pair to the canonical member of its orbit
and returns a certificate (U, Q) with U (A, B) Q equal to the output,
checkable by plain multiplication.  Not every orbit contains a canonical
pair: from n = 4 on there are free pairs whose nilpotent structure is
entangled across A and B, and the exact orbit invariant ``span_profile``
proves them unreachable; canonicalize raises CanonicalizationFailed for
those inputs.

The reduction runs in two phases.  Phase one drives the A part to diagonal
0/1 shape: clear the B diagonal, clear mixed-eigenvalue entries by
triangular similarity, scale the diagonal, then clear remaining entries by
row and column operations.  Entries whose row and column diagonals both
vanish admit none of those moves; a bounded best-first search over short
generator words handles them, and every activation is flagged in the
trace.  Phase two zeroes the unit rows of B, selects pivot columns,
normalizes them with a right unit V, and clears below-pivot residue with a
left unit K.
"""

import heapq
import itertools

from .errors import (
    BudgetExceeded,
    CanonicalizationFailed,
    NotFree,
    PivotSelectionFailed,
    SingularSystem,
    UnsupportedDimension,
)
from .field import GF
from .gl2 import GL2Element, act_left_unit, act_right, gl2_generators
from .modpairs import ModulePair, enumeration_budget
from .partitions import bell
from .trimat import LowerTriMatrix, augmented_rank, matrix_rank


class Certificate:
    """A left unit U and group element Q with U (input) Q = output."""

    __slots__ = ("U", "Q")

    def __init__(self, U: LowerTriMatrix, Q: GL2Element):
        self.U = U
        self.Q = Q

    def __repr__(self):
        return f"Certificate(U={list(self.U.entries)}, Q={self.Q!r})"


class Stage:
    """One recorded reduction move and the pair it produced."""

    __slots__ = ("label", "side", "factor", "pair")

    def __init__(self, label, side, factor, pair):
        self.label = label
        self.side = side  # "left" or "right"
        self.factor = factor
        self.pair = pair

    def __repr__(self):
        return f"Stage({self.label!r}, {self.side})"


class Trace:
    """Ordered stage snapshots plus the pivot list of the final phase."""

    def __init__(self, stages, pivots):
        self.stages = list(stages)
        self.pivots = list(pivots)

    @property
    def search_steps(self):
        """Number of generator moves contributed by the bounded search."""
        return sum(1 for s in self.stages if s.label == "search")

    @property
    def search_activated(self):
        return self.search_steps > 0

    def __iter__(self):
        return iter(self.stages)

    def __len__(self):
        return len(self.stages)


def verify_certificate(inp: ModulePair, out: ModulePair, cert: Certificate) -> bool:
    """True iff U is a unit, Q is valid, and U (input) Q equals the output."""
    if not isinstance(cert.U, LowerTriMatrix) or not cert.U.is_unit():
        return False
    if not isinstance(cert.Q, GL2Element):
        return False
    if cert.U.n != inp.n or cert.U.field != inp.field:
        return False
    return act_right(act_left_unit(cert.U, inp), cert.Q) == out


# -- the canonical predicate -------------------------------------------------


def is_canonical(pair: ModulePair) -> bool:
    """Check the canonical-shape invariants directly."""
    A, B = pair.A, pair.B
    n = pair.n
    for i in range(1, n + 1):
        if A.entry(i, i) not in (0, 1):
            return False
        if B.entry(i, i) != 0:
            return False
        for j in range(1, i):
            if A.entry(i, j) != 0:
                return False
            if B.entry(i, j) not in (0, 1):
                return False
    columns = []
    for i in range(1, n + 1):
        nonzeros = int(A.entry(i, i) != 0)
        for j in range(1, i):
            if B.entry(i, j):
                nonzeros += 1
                columns.append(j)
        if nonzeros != 1:
            return False
    if len(columns) != len(set(columns)):
        return False
    # Consequence of the shape: n nonzero entries and full rank.
    total = sum(1 for v in A.entries if v) + sum(1 for v in B.entries if v)
    assert total == n and augmented_rank(A, B) == n
    return True


def enumerate_canonical(n: int, field=None, budget=None):
    """All canonical pairs for dimension n, sorted by the pair total order.

    Generated directly from the shape constraints (choose the zero rows of
    A, then assign distinct B columns), independently of the partition
    bijection, so counting against Bell numbers is a real check.
    """
    if n < 2:
        raise UnsupportedDimension(f"canonical enumeration needs n >= 2, got {n}")
    cap = enumeration_budget(budget)
    if bell(n) > cap:
        raise BudgetExceeded(f"B_{n} = {bell(n)} exceeds the cap {cap}")
    if field is None:
        field = GF(2)
    out = []
    candidates = list(range(2, n + 1))
    for r in range(len(candidates) + 1):
        for zero_rows in itertools.combinations(candidates, r):
            diag = [0 if i in zero_rows else 1 for i in range(1, n + 1)]
            A = LowerTriMatrix.diagonal(field, diag)

            def assign(idx, used, placed):
                if idx == len(zero_rows):
                    B = LowerTriMatrix.zero(field, n)
                    for (i, j) in placed:
                        B = B.with_entry(i, j, 1)
                    out.append(ModulePair(A, B))
                    return
                i = zero_rows[idx]
                for j in range(1, i):
                    if j not in used:
                        assign(idx + 1, used | {j}, placed + [(i, j)])

            assign(0, frozenset(), [])
    out.sort()
    return out


# -- pivot selection and the V / K constructions ------------------------------


def select_pivots(G: LowerTriMatrix):
    """Choose, per nonzero row of G, the pivot column for the V step.

    Row i_1 takes its last nonzero column.  Each later row takes the
    largest unused column j with a nonzero entry, no nonzero entries to its
    right outside already-chosen columns, and a nonsingular growing minor
    on the chosen rows and columns.
    """
    n = G.n
    p = G.field.p
    rows = [i for i in range(1, n + 1) if any(G.entry(i, j) for j in range(1, n + 1))]
    pivots = []
    chosen = []
    for t, i in enumerate(rows, start=1):
        best = None
        for j in range(n, 0, -1):
            if j in chosen or G.entry(i, j) == 0:
                continue
            if any(G.entry(i, k) for k in range(j + 1, n + 1) if k not in chosen):
                continue
            minor = [[G.entry(r, c) for c in chosen + [j]] for r in rows[:t]]
            if matrix_rank(minor, p) == t:
                best = j
                break
        if best is None:
            raise PivotSelectionFailed(
                f"no admissible pivot column for row {i}; G violates the rank precondition")
        pivots.append((i, best))
        chosen.append(best)
    return pivots


def build_v(G: LowerTriMatrix, pivots) -> LowerTriMatrix:
    """The right unit V normalizing pivot entries of G to leading ones.

    Column l of V carries unknowns exactly at the pivot-column rows >= l.
    Each pivot row with column >= l contributes one equation: 1 when its
    pivot column is l, else 0.  Unconstrained entries are 0 and
    unconstrained diagonal entries are 1.
    """
    n = G.n
    f = G.field
    p = f.p
    entries = {}
    for l in range(1, n + 1):
        involved = [(i, j) for (i, j) in pivots if j >= l]
        if not involved:
            entries[(l, l)] = 1
            continue
        unknown_rows = sorted(j for (_, j) in involved)
        eqs = []
        rhs = []
        for (i, j) in involved:
            eqs.append([G.entry(i, r) for r in unknown_rows])
            target = 1 if j == l else 0
            if l not in unknown_rows:
                target = f.sub(target, G.entry(i, l))  # fixed v_ll = 1 term
            rhs.append(target)
        sol = _solve_square(eqs, rhs, p)
        if sol is None:
            raise SingularSystem(f"V system for column {l} is singular")
        for r, val in zip(unknown_rows, sol):
            entries[(r, l)] = val
        if l not in unknown_rows:
            entries[(l, l)] = 1
    V = LowerTriMatrix.zero(f, n)
    for (i, j), v in entries.items():
        if v:
            V = V.with_entry(i, j, v)
    if not V.is_unit():
        raise SingularSystem("constructed V is not a unit")
    return V


def _solve_square(rows, rhs, p):
    """Solve a square system mod p; None when singular."""
    m = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(m):
        pivot = None
        for r in range(col, m):
            if aug[r][col] % p:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col] % p, p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] % p:
                factor = aug[r][col] % p
                aug[r] = [(a - factor * b) % p for a, b in zip(aug[r], aug[col])]
    return [aug[r][m] % p for r in range(m)]


def build_k(A: LowerTriMatrix, H: LowerTriMatrix) -> LowerTriMatrix:
    """The left unit K clearing below-pivot residue from pivot columns of H.

    Pivot rows are the zero-diagonal rows of A; each holds a leading 1.
    Rows are processed from the bottom pivot upward so every subtraction
    lands in columns whose own clearing pass still lies ahead.
    """
    n = A.n
    p = A.field.p
    pivots = []
    for i in range(1, n + 1):
        if A.entry(i, i) == 0:
            row = H.row(i)
            lead = next((j for j in range(1, n + 1) if row[j - 1]), None)
            assert lead is not None, "zero-diagonal row of H is zero"
            assert row[lead - 1] == 1, "pivot entry is not normalized to 1"
            assert all(H.entry(r, lead) == 0 for r in range(1, i)), "entry above pivot"
            pivots.append((i, lead))
        else:
            assert not any(H.row(i)), "unit row of H is nonzero"
    hwork = [H.row(i) for i in range(1, n + 1)]
    kwork = [[int(r == c) for c in range(n)] for r in range(n)]
    for (ipiv, jpiv) in sorted(pivots, reverse=True):
        prow_h = hwork[ipiv - 1]
        prow_k = kwork[ipiv - 1]
        for i in range(ipiv + 1, n + 1):
            c = hwork[i - 1][jpiv - 1]
            if c:
                hwork[i - 1] = [(a - c * b) % p for a, b in zip(hwork[i - 1], prow_h)]
                kwork[i - 1] = [(a - c * b) % p for a, b in zip(kwork[i - 1], prow_k)]
    return LowerTriMatrix.from_rows(A.field, kwork)


# -- the reduction pipeline ---------------------------------------------------


class _Reduction:
    """Working state: current pair plus accumulated certificate factors."""

    __slots__ = ("pair", "field", "n", "record", "U", "Q", "stages")

    def __init__(self, pair, record=True):
        self.pair = pair
        self.field = pair.field
        self.n = pair.n
        self.record = record
        if record:
            self.U = LowerTriMatrix.identity(self.field, self.n)
            self.Q = GL2Element.identity(self.field, self.n)
            self.stages = []

    def left(self, u, label):
        self.pair = ModulePair(u * self.pair.A, u * self.pair.B)
        if self.record:
            self.U = u * self.U
            self.stages.append(Stage(label, "left", u, self.pair))

    def right(self, g, label):
        self.pair = act_right(self.pair, g)
        if self.record:
            self.Q = self.Q * g
            self.stages.append(Stage(label, "right", g, self.pair))


def _offense(pair):
    """Entries of the A part (plus B diagonal) blocking canonical shape."""
    A, B = pair.A, pair.B
    score = 0
    for i in range(1, pair.n + 1):
        if A.entry(i, i) not in (0, 1):
            score += 1
        if B.entry(i, i) != 0:
            score += 1
        for j in range(1, i):
            if A.entry(i, j) != 0:
                score += 1
    return score


def _a_part_ready(pair):
    A, B = pair.A, pair.B
    for i in range(1, pair.n + 1):
        if A.entry(i, i) not in (0, 1) or B.entry(i, i) != 0:
            return False
        for j in range(1, i):
            if A.entry(i, j) != 0:
                return False
    return True


def _clear_b_diagonal(red):
    """Right-multiply by per-index blocks making the B diagonal zero.

    Indices with a nonzero A diagonal get the shear (1, -a^-1 b; 0, 1);
    zero indices get the swap block (0, -1; 1, 0).  Skipped outright when
    the B diagonal is already zero, so canonical pairs stay fixed points.
    """
    f = red.field
    adiag = red.pair.A.diag()
    bdiag = red.pair.B.diag()
    if not any(bdiag):
        return
    xs, ys, ws, zs = [], [], [], []
    for a, b in zip(adiag, bdiag):
        if a != 0:
            xs.append(1)
            ys.append(f.neg(f.mul(f.inv(a), b)))
            ws.append(0)
            zs.append(1)
        else:
            xs.append(0)
            ys.append(f.neg(1))
            ws.append(1)
            zs.append(0)
    g = GL2Element(
        LowerTriMatrix.diagonal(f, xs),
        LowerTriMatrix.diagonal(f, ys),
        LowerTriMatrix.diagonal(f, ws),
        LowerTriMatrix.diagonal(f, zs),
    )
    red.right(g, "diagonal_clearing")


def _similarity(red):
    """Conjugate by transvections to clear entries with distinct diagonals.

    Sweeping by distance below the diagonal keeps cleared entries cleared:
    conjugating at (i, j) only disturbs positions strictly farther from the
    diagonal.
    """
    n, f = red.n, red.field
    p = f.p
    work = [red.pair.A.row(i) for i in range(1, n + 1)]
    P = LowerTriMatrix.identity(f, n)
    changed = False
    for dist in range(1, n):
        for j in range(1, n - dist + 1):
            i = j + dist
            cij = work[i - 1][j - 1]
            if cij == 0:
                continue
            cii = work[i - 1][i - 1]
            cjj = work[j - 1][j - 1]
            if cii == cjj:
                continue
            t = f.neg(f.div(cij, f.sub(cii, cjj)))
            # column j += t * column i, then row i -= t * row j
            for k in range(n):
                work[k][j - 1] = (work[k][j - 1] + t * work[k][i - 1]) % p
            jrow = list(work[j - 1])
            work[i - 1] = [(a - t * b) % p for a, b in zip(work[i - 1], jrow)]
            P = P * LowerTriMatrix.identity(f, n).with_entry(i, j, t)
            changed = True
    if changed:
        red.left(P.inverse(), "similarity_left")
        red.right(GL2Element.block_diag(P, LowerTriMatrix.identity(f, n)),
                  "similarity_right")
        assert [red.pair.A.row(i) for i in range(1, n + 1)] == work


def _scale(red):
    """Left-multiply by the diagonal unit sending nonzero diagonals to 1."""
    f = red.field
    adiag = red.pair.A.diag()
    scale = [f.inv(a) if a != 0 else 1 for a in adiag]
    if all(s == 1 for s in scale):
        return
    red.left(LowerTriMatrix.diagonal(f, scale), "scaling")


def _row_clear(red):
    """Left row operations clearing A entries below a unit diagonal.

    Rows ascend and columns descend inside a row, so disturbed positions
    are always processed later in the same pass.
    """
    n, f = red.n, red.field
    p = f.p
    work = [red.pair.A.row(i) for i in range(1, n + 1)]
    L = LowerTriMatrix.identity(f, n)
    changed = False
    for i in range(2, n + 1):
        for j in range(i - 1, 0, -1):
            v = work[i - 1][j - 1]
            if v and work[j - 1][j - 1] == 1:
                t = f.neg(v)
                work[i - 1] = [(a + t * b) % p for a, b in zip(work[i - 1], work[j - 1])]
                L = LowerTriMatrix.identity(f, n).with_entry(i, j, t) * L
                changed = True
    if changed:
        red.left(L, "row_clearing")
        assert [red.pair.A.row(i) for i in range(1, n + 1)] == work


def _col_clear(red):
    """Right column operations clearing A entries right of a unit diagonal.

    After the row pass, unit-diagonal columns are clear below the diagonal,
    so each column operation touches exactly its target entry.
    """
    n, f = red.n, red.field
    work = [red.pair.A.row(i) for i in range(1, n + 1)]
    X = LowerTriMatrix.identity(f, n)
    changed = False
    for i in range(2, n + 1):
        if work[i - 1][i - 1] != 1:
            continue
        for j in range(1, i):
            v = work[i - 1][j - 1]
            if v:
                t = f.neg(v)
                X = X * LowerTriMatrix.identity(f, n).with_entry(i, j, t)
                work[i - 1][j - 1] = 0
                changed = True
    if changed:
        red.right(GL2Element.block_diag(X, LowerTriMatrix.identity(f, n)),
                  "column_clearing")
        assert [red.pair.A.row(i) for i in range(1, n + 1)] == work


def _cleanup(red):
    _clear_b_diagonal(red)
    _similarity(red)
    _scale(red)
    _row_clear(red)
    _col_clear(red)


def _trailing_echelon(red):
    """Left row operations making the trailing columns of G pairwise distinct.

    Full row rank alone does not make the pivot rules satisfiable: two rows
    may share their last nonzero column, and then no right unit can spread
    them over distinct columns.  Subtracting earlier rows until trailing
    columns differ restores admissibility; afterwards every row simply
    pivots on its own trailing column.  Only zero-diagonal rows are mixed,
    so the A part is untouched.
    """
    n, f = red.n, red.field
    p = f.p
    A = red.pair.A
    work = [red.pair.B.row(i) for i in range(1, n + 1)]
    L = LowerTriMatrix.identity(f, n)
    changed = False
    owner = {}
    for i in range(1, n + 1):
        if A.entry(i, i) != 0:
            continue
        while True:
            trail = next((j for j in range(n, 0, -1) if work[i - 1][j - 1]), None)
            assert trail is not None, "zero-diagonal row of G vanished"
            prev = owner.get(trail)
            if prev is None:
                owner[trail] = i
                break
            t = f.neg(f.div(work[i - 1][trail - 1], work[prev - 1][trail - 1]))
            work[i - 1] = [(a + t * b) % p
                           for a, b in zip(work[i - 1], work[prev - 1])]
            L = LowerTriMatrix.identity(f, n).with_entry(i, prev, t) * L
            changed = True
    if changed:
        red.left(L, "trailing_echelon")
        assert [red.pair.B.row(i) for i in range(1, n + 1)] == work


def _cleaned_offense(pair):
    """Offense score after a full (unrecorded) cleanup pass."""
    red = _Reduction(pair, record=False)
    _cleanup(red)
    return _offense(red.pair)


def span_profile(pair):
    """Orbit invariant: dim(F_j intersect V_i) for all i, j.

    F_j is the span of columns j..n of A and B together and V_i the span
    of the last n-i+1 standard basis vectors.  Right multiplication by any
    group element rewrites column j as a combination of columns k >= j, so
    it preserves every F_j outright; a left unit maps F_j and V_i by the
    same triangular bijection.  The profile therefore separates orbits,
    and a free pair whose profile matches no canonical pair has no
    canonical form at all.
    """
    n, p = pair.n, pair.field.p
    ident = [[int(r == s) for r in range(n)] for s in range(n)]
    profile = []
    cols = []
    dims_by_j = {}
    for j in range(n, 0, -1):
        cols.append([pair.A.entry(r, j) for r in range(1, n + 1)])
        cols.append([pair.B.entry(r, j) for r in range(1, n + 1)])
        dim_f = matrix_rank(cols, p)
        row = []
        for i in range(1, n + 1):
            dim_v = n - i + 1
            dim_sum = matrix_rank(cols + ident[i - 1:], p)
            row.append(dim_f + dim_v - dim_sum)
        dims_by_j[j] = row
    for j in range(1, n + 1):
        profile.extend(dims_by_j[j])
    return tuple(profile)


def _canonical_span_profile(pair):
    """span_profile specialized to canonical pairs by counting basis vectors."""
    n = pair.n
    profile = []
    for j in range(1, n + 1):
        indices = []
        for k in range(j, n + 1):
            if pair.A.entry(k, k):
                indices.append(k)
            for r in range(k + 1, n + 1):
                if pair.B.entry(r, k):
                    indices.append(r)
        for i in range(1, n + 1):
            profile.append(sum(1 for x in indices if x >= i))
    return tuple(profile)


_PROFILE_CACHE = {}


def reachable_profiles(n):
    """Span profiles of all canonical pairs at dimension n (field independent)."""
    cached = _PROFILE_CACHE.get(n)
    if cached is None:
        cached = frozenset(_canonical_span_profile(cp) for cp in enumerate_canonical(n))
        _PROFILE_CACHE[n] = cached
    return cached


def _search_word(pair, generators, depth, node_limit):
    """Best-first search for a short generator word lowering the offense.

    Nodes are scored by the offense remaining after a cleanup pass on the
    resulting pair.  Returns the first word reaching score zero, else the
    best strictly improving word, else None.
    """
    base = _cleaned_offense(pair)
    counter = itertools.count()
    heap = []
    seen = {pair}
    best = None  # (score, length, tiebreak, word)

    def push(parent_pair, word):
        child = act_right(parent_pair, word[-1])
        if child in seen:
            return None
        seen.add(child)
        score = _cleaned_offense(child)
        item = (score, len(word), next(counter), child, word)
        heapq.heappush(heap, item)
        return item

    for g in generators:
        item = push(pair, (g,))
        if item and item[0] == 0:
            return item[4]
    expanded = 0
    while heap and expanded < node_limit:
        score, length, _, node_pair, word = heapq.heappop(heap)
        if score == 0:
            return word
        if best is None or (score, length) < (best[0], best[1]):
            best = (score, length, word)
        expanded += 1
        if length >= depth:
            continue
        for g in generators:
            item = push(node_pair, word + (g,))
            if item and item[0] == 0:
                return item[4]
    if best is not None and best[0] < base:
        return best[2]
    return None


def canonicalize(pair: ModulePair, search_depth=4, search_limit=20000):
    """Reduce a free pair to its canonical form.

    Returns (canonical pair, certificate, trace); the certificate is
    checked by multiplication before returning.  Raises NotFree on
    non-free input.  Raises CanonicalizationFailed when the orbit
    invariant proves no canonical form exists (possible from n = 4 on) or,
    in principle, if the bounded word search stalls on a reachable input
    (never observed; the acceptance suite tracks both counts).
    """
    if not pair.is_free():
        raise NotFree("canonicalize requires a free pair")
    if pair.n >= 2 and span_profile(pair) not in reachable_profiles(pair.n):
        # The span profile is exactly orbit-invariant, so a mismatch with
        # every canonical pair proves no canonical form exists; searching
        # would only exhaust its budget on the same conclusion.
        raise CanonicalizationFailed(
            "the orbit invariant matches no canonical pair; "
            "this free pair generates an orbit without a canonical form")
    red = _Reduction(pair, record=True)
    generators = None
    pivots = []
    max_rounds = pair.n * pair.n + 2
    for _ in range(max_rounds):
        _cleanup(red)
        if _a_part_ready(red.pair):
            break
        if generators is None:
            generators = gl2_generators(red.field, red.n)
        word = _search_word(red.pair, generators, search_depth, search_limit)
        if word is None:
            raise CanonicalizationFailed(
                f"search budget exhausted at offense {_offense(red.pair)}")
        for g in word:
            red.right(g, "search")
    else:
        raise CanonicalizationFailed("reduction did not converge")

    # Phase two: zero the unit rows of B, then normalize pivots.
    A = red.pair.A
    B = red.pair.B
    if not (A * B).is_zero():
        red.right(GL2Element.upper(-B), "b_transvection")
    _trailing_echelon(red)
    G = red.pair.B
    pivots = select_pivots(G)
    V = build_v(G, pivots)
    if V != LowerTriMatrix.identity(red.field, red.n):
        red.right(GL2Element.block_diag(LowerTriMatrix.identity(red.field, red.n), V),
                  "v_step")
    K = build_k(red.pair.A, red.pair.B)
    if K != LowerTriMatrix.identity(red.field, red.n):
        red.left(K, "k_step")

    result = red.pair
    assert is_canonical(result), "pipeline ended off the canonical shape"
    cert = Certificate(red.U, red.Q)
    assert verify_certificate(pair, result, cert), "certificate failed self-check"
    return result, cert, Trace(red.stages, pivots)
