"""Pure-Python collection kernel.

Normal forms are tuples of exponents (e_0, ..., e_{n-1}) with
0 <= e_i < orders[i].  Words are sequences of (generator, exponent) pairs
with generator indices 0-based and exponents >= 0.

The relation tables encode, for each generator i, the normal word equal to
g_i^orders[i] (in generators of index > i) and, for each pair i < j, the
normal word equal to g_j^{g_i} (in generators of index >= j, or None when
the conjugate is g_j itself).  Collection moves the leftmost unprocessed
syllable into the collected prefix; terms the syllable must pass are pushed
back on the stack after conjugation.  Because conjugation and power words
never introduce indices below the syllable being processed, the procedure
terminates.

pgforge._ckernel is a compiled transcription of this module and must agree
with it output-for-output (see tests/test_kernel_parity.py).
"""

BACKEND = "python"


class KernelTables:
    """Flattened relation tables consumed by the collector."""

    __slots__ = ("n", "orders", "pows", "conjs", "identity")

    def __init__(self, n, orders, pows, conjs):
        self.n = n
        self.orders = tuple(orders)
        self.pows = tuple(tuple(w) for w in pows)
        # conjs is flat: entry i*n + j holds the word for g_j^{g_i}, i < j
        self.conjs = tuple(
            tuple(w) if w is not None else None for w in conjs
        )
        self.identity = (0,) * n


def make_tables(n, orders, pows, conjs):
    return KernelTables(n, orders, pows, conjs)


def collect(tables, vec, word):
    """Normal form of vec * word."""
    n = tables.n
    orders = tables.orders
    pows = tables.pows
    conjs = tables.conjs
    a = list(vec)
    # stack top (= end of list) is the leftmost unprocessed syllable
    stack = [(g, e) for g, e in word if e]
    stack.reverse()
    while stack:
        j, e = stack.pop()
        m = orders[j]
        base = j * n
        tail = [(k, a[k]) for k in range(j + 1, n) if a[k]]
        if all(conjs[base + k] is None for k, _ in tail):
            # everything right of j commutes with g_j: merge exponents
            tot = a[j] + e
            if tot < m:
                a[j] = tot
                continue
            q, rem = divmod(tot, m)
            a[j] = rem
            pw = pows[j]
            if not pw:
                continue
            # a = prefix * g_j^rem * pw^q * tail
            for k, _ in tail:
                a[k] = 0
            for k, ek in reversed(tail):
                stack.append((k, ek))
            for _ in range(q):
                for syl in reversed(pw):
                    stack.append(syl)
            continue
        # move a single g_j left past the tail, conjugating it
        if e > 1:
            stack.append((j, e - 1))
        for k, ek in tail:
            a[k] = 0
        for k, ek in reversed(tail):
            w = conjs[base + k]
            if w is None:
                stack.append((k, ek))
            else:
                for _ in range(ek):
                    for syl in reversed(w):
                        stack.append(syl)
        aj = a[j] + 1
        if aj == m:
            a[j] = 0
            for syl in reversed(pows[j]):
                stack.append(syl)
        else:
            a[j] = aj
    return tuple(a)


def mul(tables, u, v):
    word = [(i, e) for i, e in enumerate(v) if e]
    return collect(tables, u, word)


def inv(tables, u):
    """Normal form of u^{-1}.

    Clears exponents of u from the lowest index up: multiplying by
    g_i^{orders[i] - e_i} sends the product into the span of higher
    generators, so the appended syllables form the inverse word.
    """
    n = tables.n
    orders = tables.orders
    z = tuple(u)
    word = []
    for i in range(n):
        e = z[i]
        if e:
            k = orders[i] - e
            word.append((i, k))
            z = collect(tables, z, ((i, k),))
    return collect(tables, tables.identity, word)


def power(tables, u, k):
    if k < 0:
        u = inv(tables, u)
        k = -k
    acc = tables.identity
    sq = tuple(u)
    while k:
        if k & 1:
            acc = mul(tables, acc, sq)
        k >>= 1
        if k:
            sq = mul(tables, sq, sq)
    return acc
