"""
GF(q) matrix kernels for the enumeration and scan hot loops

Field elements are canonical integer indices. Every kernel receives the
field as four lookup tables (add, mul, neg, inv) so that the same code runs
compiled under numba or as plain Python when numba is missing.
"""

import numpy as np

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorate(func):
            return func
        return decorate


@njit(cache=True)
def rref_inplace(mat, add, mul, neg, inv):
    """Bring mat to reduced row echelon form in place and return its rank.

    Rows at or beyond the rank are left zero.
    """
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = -1
        for r in range(rank, rows):
            if mat[r, col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for c in range(cols):
                tmp = mat[rank, c]
                mat[rank, c] = mat[pivot, c]
                mat[pivot, c] = tmp
        scale = inv[mat[rank, col]]
        if scale != 1:
            for c in range(col, cols):
                mat[rank, c] = mul[scale, mat[rank, c]]
        for r in range(rows):
            if r != rank:
                f = mat[r, col]
                if f != 0:
                    nf = neg[f]
                    for c in range(col, cols):
                        mat[r, c] = add[mat[r, c], mul[nf, mat[rank, c]]]
        rank += 1
    return rank


@njit(cache=True)
def matrix_rank(mat, add, mul, neg, inv):
    work = mat.copy()
    return rref_inplace(work, add, mul, neg, inv)


@njit(cache=True)
def fill_from_pattern(out, pivots, pivot_mask, offset, q):
    """Write the RREF matrix with the given pivot columns and free-entry offset.

    Free entries are read row-major, the first one being the most
    significant base-q digit of offset.
    """
    rows, cols = out.shape
    for i in range(rows):
        for j in range(cols):
            out[i, j] = 0
    for i in range(rows - 1, -1, -1):
        p = pivots[i]
        for j in range(cols - 1, p, -1):
            if not pivot_mask[j]:
                out[i, j] = offset % q
                offset //= q
        out[i, p] = 1


@njit(cache=True)
def meets_all(cand, elems, stack, add, mul, neg, inv):
    """True if the row space of cand meets every element (full-rank bases)"""
    r, n = cand.shape
    m = elems.shape[0]
    s = elems.shape[1]
    for e in range(m):
        for i in range(r):
            for j in range(n):
                stack[i, j] = cand[i, j]
        for i in range(s):
            for j in range(n):
                stack[r + i, j] = elems[e, i, j]
        if rref_inplace(stack, add, mul, neg, inv) == r + s:
            return False
    return True


@njit(cache=True)
def meets_span(kappa, elems, zas, acc, add, mul, neg, inv):
    """True if the meets of kappa with the elements span kappa.

    Each meet is read off a Zassenhaus reduction of [kappa | kappa ; e | 0].
    """
    r, n = kappa.shape
    m = elems.shape[0]
    s = elems.shape[1]
    filled = 0
    for e in range(m):
        for i in range(r):
            for j in range(n):
                zas[i, j] = kappa[i, j]
                zas[i, n + j] = kappa[i, j]
        for i in range(s):
            for j in range(n):
                zas[r + i, j] = elems[e, i, j]
                zas[r + i, n + j] = 0
        rank = rref_inplace(zas, add, mul, neg, inv)
        added = 0
        for i in range(rank):
            left_zero = True
            for j in range(n):
                if zas[i, j] != 0:
                    left_zero = False
                    break
            if left_zero:
                for j in range(n):
                    acc[filled, j] = zas[i, n + j]
                filled += 1
                added += 1
        if added > 0:
            filled = rref_inplace(acc[:filled], add, mul, neg, inv)
            if filled == r:
                return True
    return False


@njit(cache=True)
def first_unspanned(pivots, pivot_mask, start, stop, q, n, elems, add, mul, neg, inv):
    """Lowest offset in [start, stop) whose subspace is not spanned by its meets, or -1"""
    r = pivots.shape[0]
    s = elems.shape[1]
    kappa = np.zeros((r, n), np.int64)
    zas = np.zeros((r + s, 2 * n), np.int64)
    acc = np.zeros((r + s, n), np.int64)
    for offset in range(start, stop):
        fill_from_pattern(kappa, pivots, pivot_mask, offset, q)
        if not meets_span(kappa, elems, zas, acc, add, mul, neg, inv):
            return offset
    return -1


@njit(cache=True)
def first_transversal(pivots, pivot_mask, start, stop, q, n, elems, add, mul, neg, inv):
    """Lowest offset in [start, stop) whose subspace meets every element, or -1"""
    r = pivots.shape[0]
    s = elems.shape[1]
    cand = np.zeros((r, n), np.int64)
    stack = np.zeros((r + s, n), np.int64)
    for offset in range(start, stop):
        fill_from_pattern(cand, pivots, pivot_mask, offset, q)
        if meets_all(cand, elems, stack, add, mul, neg, inv):
            return offset
    return -1


@njit(cache=True)
def first_transversal_through(base, free_cols, pivots, pivot_mask, start, stop, q,
                              elems, add, mul, neg, inv):
    """Like first_transversal, restricted to subspaces containing base.

    Candidates are base stacked with a quotient RREF lifted into the
    non-pivot columns of base.
    """
    b, n = base.shape
    t = pivots.shape[0]
    nq = free_cols.shape[0]
    s = elems.shape[1]
    small = np.zeros((t, nq), np.int64)
    cand = np.zeros((b + t, n), np.int64)
    stack = np.zeros((b + t + s, n), np.int64)
    for i in range(b):
        for j in range(n):
            cand[i, j] = base[i, j]
    for offset in range(start, stop):
        fill_from_pattern(small, pivots, pivot_mask, offset, q)
        for i in range(t):
            for j in range(n):
                cand[b + i, j] = 0
            for j in range(nq):
                cand[b + i, free_cols[j]] = small[i, j]
        if meets_all(cand, elems, stack, add, mul, neg, inv):
            return offset
    return -1


@njit(cache=True)
def mark_spans(vectors, subsets, q, n, add, mul, inv, point_offsets, marks):
    """Mark every point spanned by each subset of the given vectors.

    A point is indexed by its pivot block offset plus its normalized tail
    read as a base-q number.
    """
    t = subsets.shape[1]
    coeffs = np.zeros(t, np.int64)
    vec = np.zeros(n, np.int64)
    for row in range(subsets.shape[0]):
        for lead in range(t):
            tail_count = q ** (t - lead - 1)
            for tail in range(tail_count):
                for i in range(t):
                    coeffs[i] = 0
                coeffs[lead] = 1
                x = tail
                for i in range(t - 1, lead, -1):
                    coeffs[i] = x % q
                    x //= q
                for j in range(n):
                    vec[j] = 0
                for i in range(t):
                    c = coeffs[i]
                    if c != 0:
                        src = subsets[row, i]
                        for j in range(n):
                            vec[j] = add[vec[j], mul[c, vectors[src, j]]]
                lead_pos = -1
                for j in range(n):
                    if vec[j] != 0:
                        lead_pos = j
                        break
                if lead_pos < 0:
                    continue
                scale = inv[vec[lead_pos]]
                tail_index = 0
                for j in range(lead_pos + 1, n):
                    tail_index = tail_index * q + mul[scale, vec[j]]
                marks[point_offsets[lead_pos] + tail_index] = True


@njit(cache=True)
def syndrome_bfs(moves, q, r, add, dist, queue):
    """Breadth-first search over syndromes from zero; returns the number of states reached"""
    digits = np.zeros(r, np.int64)
    dist[0] = 0
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        s = queue[head]
        head += 1
        x = s
        for c in range(r):
            digits[c] = x % q
            x //= q
        for m in range(moves.shape[0]):
            t = 0
            place = 1
            for c in range(r):
                t += add[digits[c], moves[m, c]] * place
                place *= q
            if dist[t] < 0:
                dist[t] = dist[s] + 1
                queue[tail] = t
                tail += 1
    return tail


@njit(cache=True)
def first_nested_support(supports):
    """First pair (i, j), i != j, with support i contained in support j, or (-1, -1)"""
    m = supports.shape[0]
    for i in range(m):
        si = supports[i]
        for j in range(m):
            if i != j and (si & ~supports[j]) == 0:
                return i, j
    return -1, -1
