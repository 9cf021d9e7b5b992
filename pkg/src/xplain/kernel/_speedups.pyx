# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled candidate checks over packed bitmask programs (up to 63 atoms).

Same contract as the pure kernel; the hot loops (rule evaluation, subset
descent for the minimality check, brute-force scans) run on C integers.
"""

from libc.stdlib cimport calloc, free

ctypedef unsigned long long u64


cdef inline bint _compare(long long value, int code, long long bound) nogil:
    if code == 0:
        return value > bound
    if code == 1:
        return value >= bound
    if code == 2:
        return value < bound
    if code == 3:
        return value <= bound
    if code == 4:
        return value == bound
    return value != bound


cdef class SpeedKernel:
    cdef int n_atoms, n_rules, n_aggs, n_elems
    cdef u64* heads
    cdef u64* pos
    cdef u64* neg
    cdef int* rule_agg_off
    cdef int* agg_cmp
    cdef long long* agg_bound
    cdef char* agg_negated
    cdef int* agg_elem_off
    cdef u64* elem_mask
    cdef long long* elem_weight
    cdef int* reduct_buf

    def __cinit__(self, dict packed):
        cdef int i
        self.n_atoms = packed["n_atoms"]
        if self.n_atoms > 63:
            raise ValueError("compiled kernel limited to 63 atoms")
        heads = packed["heads"]
        self.n_rules = len(heads)
        self.n_aggs = len(packed["agg_cmp"])
        self.n_elems = len(packed["elem_mask"])
        self.heads = <u64*> calloc(max(self.n_rules, 1), sizeof(u64))
        self.pos = <u64*> calloc(max(self.n_rules, 1), sizeof(u64))
        self.neg = <u64*> calloc(max(self.n_rules, 1), sizeof(u64))
        self.rule_agg_off = <int*> calloc(self.n_rules + 1, sizeof(int))
        self.agg_cmp = <int*> calloc(max(self.n_aggs, 1), sizeof(int))
        self.agg_bound = <long long*> calloc(max(self.n_aggs, 1), sizeof(long long))
        self.agg_negated = <char*> calloc(max(self.n_aggs, 1), sizeof(char))
        self.agg_elem_off = <int*> calloc(self.n_aggs + 1, sizeof(int))
        self.elem_mask = <u64*> calloc(max(self.n_elems, 1), sizeof(u64))
        self.elem_weight = <long long*> calloc(max(self.n_elems, 1), sizeof(long long))
        self.reduct_buf = <int*> calloc(max(self.n_rules, 1), sizeof(int))
        for i in range(self.n_rules):
            self.heads[i] = heads[i]
            self.pos[i] = packed["pos"][i]
            self.neg[i] = packed["neg"][i]
        for i in range(self.n_rules + 1):
            self.rule_agg_off[i] = packed["rule_agg_off"][i]
        for i in range(self.n_aggs):
            self.agg_cmp[i] = packed["agg_cmp"][i]
            self.agg_bound[i] = packed["agg_bound"][i]
            self.agg_negated[i] = packed["agg_negated"][i]
        for i in range(self.n_aggs + 1):
            self.agg_elem_off[i] = packed["agg_elem_off"][i]
        for i in range(self.n_elems):
            self.elem_mask[i] = packed["elem_mask"][i]
            self.elem_weight[i] = packed["elem_weight"][i]

    def __dealloc__(self):
        free(self.heads)
        free(self.pos)
        free(self.neg)
        free(self.rule_agg_off)
        free(self.agg_cmp)
        free(self.agg_bound)
        free(self.agg_negated)
        free(self.agg_elem_off)
        free(self.elem_mask)
        free(self.elem_weight)
        free(self.reduct_buf)

    @property
    def backend(self):
        return "compiled"

    cdef inline bint _body_satisfied(self, int rule, u64 bits) nogil:
        cdef int agg, e
        cdef long long value
        cdef bint holds
        if self.pos[rule] & bits != self.pos[rule]:
            return False
        if self.neg[rule] & bits:
            return False
        for agg in range(self.rule_agg_off[rule], self.rule_agg_off[rule + 1]):
            value = 0
            for e in range(self.agg_elem_off[agg], self.agg_elem_off[agg + 1]):
                if self.elem_mask[e] & bits:
                    value += self.elem_weight[e]
            holds = _compare(value, self.agg_cmp[agg], self.agg_bound[agg])
            if holds == <bint> self.agg_negated[agg]:
                return False
        return True

    cdef inline bint _is_model(self, u64 bits) nogil:
        cdef int rule
        for rule in range(self.n_rules):
            if self._body_satisfied(rule, bits) and not (self.heads[rule] & bits):
                return False
        return True

    cdef bint _is_answer_set(self, u64 bits) nogil:
        cdef int rule, i, n_reduct = 0
        cdef u64 sub
        cdef bint submodel
        for rule in range(self.n_rules):
            if self._body_satisfied(rule, bits):
                self.reduct_buf[n_reduct] = rule
                n_reduct += 1
        for i in range(n_reduct):
            if not (self.heads[self.reduct_buf[i]] & bits):
                return False
        if bits == 0:
            return True
        sub = (bits - 1) & bits
        while True:
            submodel = True
            for i in range(n_reduct):
                rule = self.reduct_buf[i]
                if self._body_satisfied(rule, sub) and not (self.heads[rule] & sub):
                    submodel = False
                    break
            if submodel:
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & bits

    def body_satisfied(self, int rule, object bits):
        return self._body_satisfied(rule, <u64> bits)

    def is_model(self, object bits):
        return self._is_model(<u64> bits)

    def is_answer_set(self, object bits):
        return self._is_answer_set(<u64> bits)

    def answer_sets_brute(self, limit=None):
        if self.n_atoms > 25:
            raise ValueError("brute-force scan limited to 25 atoms")
        cdef long long cap = -1 if limit is None else <long long> limit
        cdef u64 bits
        cdef u64 end = (<u64> 1) << self.n_atoms
        out = []
        bits = 0
        while bits < end:
            if self._is_answer_set(bits):
                out.append(bits)
                if cap >= 0 and len(out) >= cap:
                    break
            bits += 1
        return out
