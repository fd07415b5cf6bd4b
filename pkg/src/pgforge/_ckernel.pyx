# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled collection kernel.

A direct transcription of pgforge._pykernel; the two must agree
output-for-output (tests/test_kernel_parity.py).  Words and normal forms
cross the boundary as Python tuples; the inner loop runs on C arrays.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc

BACKEND = "c"


cdef struct Syl:
    int g
    int e


cdef class KernelTables:
    cdef public int n
    cdef public tuple orders
    cdef public tuple pows
    cdef public tuple conjs
    cdef public tuple identity
    # flattened relation words: per generator power word, per (i, j) pair
    # conjugation word; offsets of -1 mark trivial conjugation
    cdef int *c_orders
    cdef Syl *word_data
    cdef int *pow_off
    cdef int *pow_len
    cdef int *conj_off
    cdef int *conj_len

    def __cinit__(self, n, orders, pows, conjs):
        self.n = n
        self.orders = tuple(orders)
        self.pows = tuple(tuple(w) for w in pows)
        self.conjs = tuple(tuple(w) if w is not None else None for w in conjs)
        self.identity = (0,) * n

        cdef int total = 0
        for w in self.pows:
            total += len(w)
        for w in self.conjs:
            if w is not None:
                total += len(w)
        self.c_orders = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
        self.word_data = <Syl *> PyMem_Malloc(max(total, 1) * sizeof(Syl))
        self.pow_off = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
        self.pow_len = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
        self.conj_off = <int *> PyMem_Malloc(max(n * n, 1) * sizeof(int))
        self.conj_len = <int *> PyMem_Malloc(max(n * n, 1) * sizeof(int))
        if (self.c_orders == NULL or self.word_data == NULL
                or self.pow_off == NULL or self.pow_len == NULL
                or self.conj_off == NULL or self.conj_len == NULL):
            raise MemoryError()

        cdef int i, pos = 0
        for i in range(n):
            self.c_orders[i] = self.orders[i]
        for i in range(n):
            w = self.pows[i]
            self.pow_off[i] = pos
            self.pow_len[i] = len(w)
            for g, e in w:
                self.word_data[pos].g = g
                self.word_data[pos].e = e
                pos += 1
        for i in range(n * n):
            w = self.conjs[i]
            if w is None:
                self.conj_off[i] = -1
                self.conj_len[i] = 0
            else:
                self.conj_off[i] = pos
                self.conj_len[i] = len(w)
                for g, e in w:
                    self.word_data[pos].g = g
                    self.word_data[pos].e = e
                    pos += 1

    def __dealloc__(self):
        PyMem_Free(self.c_orders)
        PyMem_Free(self.word_data)
        PyMem_Free(self.pow_off)
        PyMem_Free(self.pow_len)
        PyMem_Free(self.conj_off)
        PyMem_Free(self.conj_len)


def make_tables(n, orders, pows, conjs):
    return KernelTables(n, orders, pows, conjs)


cdef struct Stack:
    Syl *data
    int size
    int capacity


cdef inline int stack_push(Stack *s, int g, int e) except -1:
    cdef Syl *grown
    if s.size == s.capacity:
        s.capacity = s.capacity * 2 if s.capacity else 64
        grown = <Syl *> PyMem_Realloc(s.data, s.capacity * sizeof(Syl))
        if grown == NULL:
            raise MemoryError()
        s.data = grown
    s.data[s.size].g = g
    s.data[s.size].e = e
    s.size += 1
    return 0


cdef int _collect_into(KernelTables t, int *a, object word) except -1:
    """a := a * word, in place.  Word is any iterable of (gen, exp)."""
    cdef Stack stack
    stack.data = NULL
    stack.size = 0
    stack.capacity = 0
    cdef int n = t.n
    cdef int j, e, k, m, tot, q, rem, aj, base, off, length, w, copy
    cdef int tail_start, commuting, idx
    cdef Syl *wd = t.word_data
    try:
        pairs = list(word)
        for item in reversed(pairs):
            j = item[0]
            e = item[1]
            if e:
                stack_push(&stack, j, e)
        while stack.size:
            stack.size -= 1
            j = stack.data[stack.size].g
            e = stack.data[stack.size].e
            m = t.c_orders[j]
            base = j * n
            commuting = 1
            for k in range(j + 1, n):
                if a[k] and t.conj_off[base + k] >= 0:
                    commuting = 0
                    break
            if commuting:
                tot = a[j] + e
                if tot < m:
                    a[j] = tot
                    continue
                q = tot / m
                rem = tot % m
                a[j] = rem
                length = t.pow_len[j]
                if length == 0:
                    continue
                # a = prefix * g_j^rem * pow^q * tail
                for k in range(n - 1, j, -1):
                    if a[k]:
                        stack_push(&stack, k, a[k])
                        a[k] = 0
                off = t.pow_off[j]
                for copy in range(q):
                    for idx in range(length - 1, -1, -1):
                        stack_push(&stack, wd[off + idx].g, wd[off + idx].e)
                continue
            # move one g_j past the tail, conjugating the moved terms
            if e > 1:
                stack_push(&stack, j, e - 1)
            for k in range(n - 1, j, -1):
                if not a[k]:
                    continue
                e2 = a[k]
                a[k] = 0
                off = t.conj_off[base + k]
                if off < 0:
                    stack_push(&stack, k, e2)
                else:
                    length = t.conj_len[base + k]
                    for copy in range(e2):
                        for idx in range(length - 1, -1, -1):
                            stack_push(&stack, wd[off + idx].g, wd[off + idx].e)
            aj = a[j] + 1
            if aj == m:
                a[j] = 0
                off = t.pow_off[j]
                length = t.pow_len[j]
                for idx in range(length - 1, -1, -1):
                    stack_push(&stack, wd[off + idx].g, wd[off + idx].e)
            else:
                a[j] = aj
        return 0
    finally:
        PyMem_Free(stack.data)


cdef tuple _vec_out(int *a, int n):
    cdef int i
    out = [0] * n
    for i in range(n):
        out[i] = a[i]
    return tuple(out)


def collect(KernelTables t, vec, word):
    cdef int n = t.n
    cdef int i
    cdef int *a = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            a[i] = vec[i]
        _collect_into(t, a, word)
        return _vec_out(a, n)
    finally:
        PyMem_Free(a)


def mul(KernelTables t, u, v):
    cdef int n = t.n
    cdef int i
    cdef int *a = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            a[i] = u[i]
        word = [(i, v[i]) for i in range(n) if v[i]]
        _collect_into(t, a, word)
        return _vec_out(a, n)
    finally:
        PyMem_Free(a)


def inv(KernelTables t, u):
    cdef int n = t.n
    cdef int i, e, k
    cdef int *z = <int *> PyMem_Malloc(max(n, 1) * sizeof(int))
    if z == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            z[i] = u[i]
        word = []
        for i in range(n):
            e = z[i]
            if e:
                k = t.c_orders[i] - e
                word.append((i, k))
                _collect_into(t, z, ((i, k),))
        for i in range(n):
            z[i] = 0
        _collect_into(t, z, word)
        return _vec_out(z, n)
    finally:
        PyMem_Free(z)


def power(KernelTables t, u, long k):
    if k < 0:
        u = inv(t, u)
        k = -k
    acc = t.identity
    sq = tuple(u)
    while k:
        if k & 1:
            acc = mul(t, acc, sq)
        k >>= 1
        if k:
            sq = mul(t, sq, sq)
    return acc
