# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Mirrors ``_pure_kernels`` exactly (same outputs, same order). Rational
arithmetic runs on int64 with 128-bit intermediates; a value that will not
fit int64 raises OverflowError and the dispatcher reruns the pure kernels.
"""

from libc.stdlib cimport free, malloc

from .errors import OrbitCapExceededError

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef long long I64_MAX = 9223372036854775807

BACKEND = "compiled"


cdef long long _gcd128(i128 a, i128 b) except? -1:
    cdef i128 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b != 0:
        t = a % b
        a = b
        b = t
    if a > <i128> I64_MAX:
        raise OverflowError("gcd exceeds int64")
    return <long long> a


cdef inline long long _fit64(i128 v) except? -2:
    if v > <i128> I64_MAX or v < -(<i128> I64_MAX):
        raise OverflowError("value exceeds int64")
    return <long long> v


def simple_cycles(succ, long long cap):
    """All simple directed cycles, smallest-node-first rotations."""
    cdef int n = len(succ)
    cdef int total = 0
    cdef int i, j, m
    for i in range(n):
        total += len(succ[i])

    cdef int *flat = <int *> malloc(max(total, 1) * sizeof(int))
    cdef int *start = <int *> malloc((n + 2) * sizeof(int))
    cdef int *path = <int *> malloc((n + 2) * sizeof(int))
    cdef int *pos = <int *> malloc((n + 2) * sizeof(int))
    cdef char *on_path = <char *> malloc(max(n, 1) * sizeof(char))
    if flat == NULL or start == NULL or path == NULL or pos == NULL or on_path == NULL:
        free(flat); free(start); free(path); free(pos); free(on_path)
        raise MemoryError()

    cdef int root, depth, node, w, p, end
    cdef bint descended
    cycles = []
    try:
        j = 0
        for i in range(n):
            start[i] = j
            for w in sorted(succ[i]):
                flat[j] = w
                j += 1
        start[n] = j
        for i in range(n):
            on_path[i] = 0

        for root in range(n):
            depth = 0
            path[0] = root
            pos[0] = start[root]
            on_path[root] = 1
            while depth >= 0:
                node = path[depth]
                p = pos[depth]
                end = start[node + 1]
                descended = False
                while p < end:
                    w = flat[p]
                    p += 1
                    if w == root:
                        if len(cycles) >= cap:
                            raise OrbitCapExceededError(
                                f"cycle enumeration exceeded the cap of {cap}"
                            )
                        cycles.append(tuple([path[m] for m in range(depth + 1)]))
                    elif w > root and not on_path[w]:
                        pos[depth] = p
                        depth += 1
                        path[depth] = w
                        pos[depth] = start[w]
                        on_path[w] = 1
                        descended = True
                        break
                if not descended:
                    on_path[node] = 0
                    depth -= 1
    finally:
        free(flat); free(start); free(path); free(pos); free(on_path)
    return cycles


def disjoint_subsets(masks, long long cap):
    """All subsets of pairwise disjoint masks, as index tuples."""
    cdef int n = len(masks)
    cdef long long *cmask = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef int *chosen = <int *> malloc((n + 2) * sizeof(int))
    cdef int *nxt = <int *> malloc((n + 2) * sizeof(int))
    cdef long long *used = <long long *> malloc((n + 2) * sizeof(long long))
    if cmask == NULL or chosen == NULL or nxt == NULL or used == NULL:
        free(cmask); free(chosen); free(nxt); free(used)
        raise MemoryError()

    cdef int depth, i, m
    out = []
    try:
        for i in range(n):
            cmask[i] = masks[i]
        if cap < 1:
            raise OrbitCapExceededError(
                f"pseudo-orbit enumeration exceeded the cap of {cap}"
            )
        out.append(())
        depth = 0
        nxt[0] = 0
        used[0] = 0
        while depth >= 0:
            i = nxt[depth]
            if i >= n:
                depth -= 1
                continue
            nxt[depth] = i + 1
            if cmask[i] & used[depth]:
                continue
            chosen[depth] = i
            if len(out) >= cap:
                raise OrbitCapExceededError(
                    f"pseudo-orbit enumeration exceeded the cap of {cap}"
                )
            out.append(tuple([chosen[m] for m in range(depth + 1)]))
            used[depth + 1] = used[depth] | cmask[i]
            nxt[depth + 1] = i + 1
            depth += 1
    finally:
        free(cmask); free(chosen); free(nxt); free(used)
    return out


def accumulate_condition(masks, lengths, amp_num, amp_den, long long cap):
    """Sum (-1)^m * prod(amplitudes) per total length; exact on int64."""
    cdef int n = len(masks)
    cdef long long maxlen = 0
    cdef int i
    for i in range(n):
        maxlen += <long long> lengths[i]
    if maxlen > 20_000_000:
        raise OverflowError("scaled length range too large for the dense table")

    cdef long long *cmask = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *clen = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *cnum = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *cden = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *acc_num = <long long *> malloc((maxlen + 1) * sizeof(long long))
    cdef long long *acc_den = <long long *> malloc((maxlen + 1) * sizeof(long long))
    # per-depth state of the backtracking walk
    cdef int *nxt = <int *> malloc((n + 2) * sizeof(int))
    cdef long long *used = <long long *> malloc((n + 2) * sizeof(long long))
    cdef long long *wlen = <long long *> malloc((n + 2) * sizeof(long long))
    cdef long long *wnum = <long long *> malloc((n + 2) * sizeof(long long))
    cdef long long *wden = <long long *> malloc((n + 2) * sizeof(long long))
    if (cmask == NULL or clen == NULL or cnum == NULL or cden == NULL or
            acc_num == NULL or acc_den == NULL or nxt == NULL or used == NULL or
            wlen == NULL or wnum == NULL or wden == NULL):
        free(cmask); free(clen); free(cnum); free(cden); free(acc_num); free(acc_den)
        free(nxt); free(used); free(wlen); free(wnum); free(wden)
        raise MemoryError()

    cdef long long generated = 0, g, length
    cdef i128 nn, nd
    cdef int depth
    try:
        for i in range(n):
            cmask[i] = masks[i]
            clen[i] = lengths[i]
            cnum[i] = amp_num[i]
            cden[i] = amp_den[i]
        for length in range(maxlen + 1):
            acc_den[length] = 0  # 0 marks an absent coefficient

        generated = 1  # the empty subset
        if generated > cap:
            raise OrbitCapExceededError(
                f"pseudo-orbit enumeration exceeded the cap of {cap}"
            )
        _accumulate(acc_num, acc_den, 0, 1, 1)

        depth = 0
        nxt[0] = 0
        used[0] = 0
        wlen[0] = 0
        wnum[0] = 1
        wden[0] = 1
        while depth >= 0:
            i = nxt[depth]
            if i >= n:
                depth -= 1
                continue
            nxt[depth] = i + 1
            if cmask[i] & used[depth]:
                continue
            # extend by cycle i: amplitude *= -amp_i
            nn = (<i128> wnum[depth]) * (-cnum[i])
            nd = (<i128> wden[depth]) * cden[i]
            g = _gcd128(nn, nd)
            if g > 1:
                nn = nn // g
                nd = nd // g
            generated += 1
            if generated > cap:
                raise OrbitCapExceededError(
                    f"pseudo-orbit enumeration exceeded the cap of {cap}"
                )
            used[depth + 1] = used[depth] | cmask[i]
            wlen[depth + 1] = wlen[depth] + clen[i]
            wnum[depth + 1] = _fit64(nn)
            wden[depth + 1] = _fit64(nd)
            nxt[depth + 1] = i + 1
            _accumulate(acc_num, acc_den, wlen[depth + 1], wnum[depth + 1], wden[depth + 1])
            depth += 1

        result = {}
        for length in range(maxlen + 1):
            if acc_den[length] != 0:
                result[int(length)] = (int(acc_num[length]), int(acc_den[length]))
        return result
    finally:
        free(cmask); free(clen); free(cnum); free(cden); free(acc_num); free(acc_den)
        free(nxt); free(used); free(wlen); free(wnum); free(wden)


cdef int _accumulate(long long *acc_num, long long *acc_den,
                     long long length, long long num, long long den) except -1:
    cdef i128 new_num, new_den
    cdef long long g
    if acc_den[length] == 0:
        acc_num[length] = num
        acc_den[length] = den
        return 0
    new_num = (<i128> acc_num[length]) * den + (<i128> num) * acc_den[length]
    new_den = (<i128> acc_den[length]) * den
    if new_num == 0:
        acc_den[length] = 0
        return 0
    g = _gcd128(new_num, new_den)
    acc_num[length] = _fit64(new_num // g)
    acc_den[length] = _fit64(new_den // g)
    return 0
