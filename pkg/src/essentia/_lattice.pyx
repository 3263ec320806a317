# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled submodule-lattice kernel.

Same interface and output as ``_lattice_py``: submodules are bitsets
over element indices, stored as packed 64-bit words; index 0 is the
zero element.  The enumeration seeds every cyclic submodule and closes
the member list under joins with the seeds; flags are recomputed from
the definitions by pairwise bitset sweeps.
"""

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

ctypedef unsigned long long u64
ctypedef unsigned short u16


cdef inline void _translate_into(u64* dst, const u64* src, const u16* row, int words) nogil:
    """dst |= {row[e] : e in src}"""
    cdef int w, b, e
    cdef u64 bits
    for w in range(words):
        bits = src[w]
        while bits:
            b = __builtin_ctzll(bits)
            bits &= bits - 1
            e = row[(w << 6) + b]
            dst[e >> 6] |= (<u64>1) << (e & 63)


cdef inline bint _subset(const u64* a, const u64* b, int words) nogil:
    """a subset of b"""
    cdef int w
    for w in range(words):
        if a[w] & ~b[w]:
            return False
    return True


cdef inline bint _trivial_meet(const u64* a, const u64* b, int words) nogil:
    """intersection is exactly the zero element (bit 0)"""
    cdef int w
    if (a[0] & b[0]) != 1:
        return False
    for w in range(1, words):
        if a[w] & b[w]:
            return False
    return True


cdef class _Builder:
    cdef public object store          # numpy (cap, words) uint64
    cdef u64[:, ::1] rows
    cdef dict index
    cdef public int count
    cdef int words

    def __cinit__(self, int words):
        self.words = words
        self.store = np.zeros((256, words), dtype=np.uint64)
        self.rows = self.store
        self.index = {}
        self.count = 0

    cdef int add(self, const u64* mask):
        cdef int i
        key = bytes((<const unsigned char*>mask)[:self.words * 8])
        got = self.index.get(key)
        if got is not None:
            return <int>got
        if self.count == self.store.shape[0]:
            grown = np.zeros((self.store.shape[0] * 2, self.words), dtype=np.uint64)
            grown[:self.count] = self.store
            self.store = grown
            self.rows = self.store
        for i in range(self.words):
            self.rows[self.count, i] = mask[i]
        self.index[key] = self.count
        self.count += 1
        return self.count - 1


def enumerate_masks(add_table, action_tables):
    """All submodule bitmasks, canonically sorted by (popcount, value)."""
    cdef object add_np = np.ascontiguousarray(add_table, dtype=np.uint16)
    cdef object act_np = np.ascontiguousarray(action_tables, dtype=np.uint16)
    cdef const u16[:, ::1] add = add_np
    cdef const u16[:, ::1] acts = act_np.reshape(-1, add_np.shape[1]) if act_np.size else add_np[:0]
    cdef int n = add.shape[0]
    cdef int words = (n + 63) >> 6
    cdef int n_actions = acts.shape[0]

    scratch_np = np.zeros(words, dtype=np.uint64)
    orbit_np = np.zeros(n, dtype=np.int64)
    # the closure at least doubles per growth round, so <= log2(n) rounds,
    # each queueing at most n_actions * n images
    stack_np = np.zeros(16 * n * (n_actions + 1) + 16, dtype=np.int64)
    cdef u64[::1] scratch = scratch_np
    cdef long long[::1] orbit = orbit_np
    cdef long long[::1] stack = stack_np

    # --- cyclic seeds: closure of {x} under addition and the actions
    cdef _Builder seeds = _Builder(words)
    cdef int x, w, b, e, g, cur, n_orbit, k, a, top
    cdef u64 bits
    for x in range(n):
        for w in range(words):
            scratch[w] = 0
        scratch[0] = 1  # zero element
        top = 0
        stack[top] = x
        top += 1
        while top:
            top -= 1
            g = <int>stack[top]
            if scratch[g >> 6] >> (g & 63) & 1:
                continue
            # additive orbit of g
            n_orbit = 0
            cur = g
            while cur != 0:
                orbit[n_orbit] = cur
                n_orbit += 1
                cur = add[g, cur]
            # closed := union of translates of closed by the orbit
            for k in range(n_orbit):
                _translate_into(&scratch[0], &scratch[0], &add[<int>orbit[k], 0], words)
            # queue action images that fall outside
            for a in range(n_actions):
                for w in range(words):
                    bits = scratch[w]
                    while bits:
                        b = __builtin_ctzll(bits)
                        bits &= bits - 1
                        e = acts[a, (w << 6) + b]
                        if not (scratch[e >> 6] >> (e & 63) & 1):
                            stack[top] = e
                            top += 1
        seeds.add(&scratch[0])

    cdef int n_seeds = seeds.count
    # element lists of each seed, flattened
    seed_elems_np = np.zeros(n_seeds * n, dtype=np.int64)
    seed_off_np = np.zeros(n_seeds + 1, dtype=np.int64)
    cdef long long[::1] seed_elems = seed_elems_np
    cdef long long[::1] seed_off = seed_off_np
    cdef u64[:, ::1] seed_rows = seeds.store
    cdef int si, pos = 0
    for si in range(n_seeds):
        seed_off[si] = pos
        for w in range(words):
            bits = seed_rows[si, w]
            while bits:
                b = __builtin_ctzll(bits)
                bits &= bits - 1
                e = (w << 6) + b
                if e != 0:
                    seed_elems[pos] = e
                    pos += 1
    seed_off[n_seeds] = pos

    # --- worklist: close the member set under joins with the seeds
    cdef _Builder members = _Builder(words)
    for si in range(n_seeds):
        members.add(&seed_rows[si, 0])
    cdef int qi = 0, j
    cdef u64[:, ::1] mrows
    while qi < members.count:
        mrows = members.store  # re-acquire: store may have been reallocated
        for si in range(n_seeds):
            mrows = members.store
            if _subset(&seed_rows[si, 0], &mrows[qi, 0], words):
                continue
            for w in range(words):
                scratch[w] = mrows[qi, w]
            for k in range(seed_off[si], seed_off[si + 1]):
                _translate_into(&scratch[0], &mrows[qi, 0], &add[<int>seed_elems[k], 0], words)
            members.add(&scratch[0])
        qi += 1

    # --- canonical sort by (popcount, value)
    packed = members.store[:members.count]
    out = [int.from_bytes(packed[i].tobytes(), "little") for i in range(members.count)]
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def compute_flags(masks, add_table):
    """Definitional flags for a canonically sorted lattice; see the pure
    implementation for the definitions."""
    cdef object add_np = np.ascontiguousarray(add_table, dtype=np.uint16)
    cdef const u16[:, ::1] add = add_np
    cdef int n = add.shape[0]
    cdef int words = (n + 63) >> 6
    cdef int count = len(masks)

    packed_np = np.zeros((count, words), dtype=np.uint64)
    cdef int i, j, w, below, b, e, k
    for i in range(count):
        packed_np[i] = np.frombuffer(int(masks[i]).to_bytes(words * 8, "little"), dtype=np.uint64)
    cdef u64[:, ::1] rows = packed_np
    pcs_np = np.zeros(count, dtype=np.int64)
    cdef long long[::1] pcs = pcs_np
    for i in range(count):
        below = 0
        for w in range(words):
            below += __builtin_popcountll(rows[i, w])
        pcs[i] = below

    ess_np = np.zeros(count, dtype=np.uint8)
    prop_np = np.zeros(count, dtype=np.uint8)
    simple_np = np.zeros(count, dtype=np.uint8)
    summand_np = np.zeros(count, dtype=np.uint8)
    cdef unsigned char[::1] ess = ess_np
    cdef unsigned char[::1] prop = prop_np
    cdef unsigned char[::1] simple = simple_np
    cdef unsigned char[::1] summand = summand_np

    cdef bint ok
    cdef u64 bits
    scratch_np = np.zeros(words, dtype=np.uint64)
    cdef u64[::1] scratch = scratch_np

    for i in range(count):
        # essential: meets every non-zero member non-trivially
        ok = True
        for j in range(1, count):
            if _trivial_meet(&rows[i, 0], &rows[j, 0], words):
                ok = False
                break
        ess[i] = ok
        prop[i] = ok and pcs[i] > 1 and pcs[i] < n

        # simple: exactly two members below-or-equal
        below = 0
        for j in range(count):
            if pcs[j] > pcs[i]:
                break
            if _subset(&rows[j, 0], &rows[i, 0], words):
                below += 1
                if below > 2:
                    break
        simple[i] = below == 2

        # direct summand: a complement with trivial meet and full join
        ok = False
        if n % pcs[i] == 0:
            for j in range(count):
                if pcs[j] != n // pcs[i] or not _trivial_meet(&rows[i, 0], &rows[j, 0], words):
                    continue
                for w in range(words):
                    scratch[w] = rows[i, w]
                for w in range(words):
                    bits = rows[j, w]
                    while bits:
                        b = __builtin_ctzll(bits)
                        bits &= bits - 1
                        e = (w << 6) + b
                        if e != 0:
                            _translate_into(&scratch[0], &rows[i, 0], &add[e, 0], words)
                # join == full module?
                below = 0
                for w in range(words):
                    below += __builtin_popcountll(scratch[w])
                if below == n:
                    ok = True
                    break
        summand[i] = ok

    as_bools = lambda arr: [bool(v) for v in arr]
    return as_bools(ess_np), as_bools(prop_np), as_bools(simple_np), as_bools(summand_np)
