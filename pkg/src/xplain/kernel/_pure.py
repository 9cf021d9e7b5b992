"""Pure-Python candidate checks over packed bitmask programs.

Mirrors the compiled kernel exactly; Python integers serve as bitsets, so
there is no limit on the number of atoms.
"""

from __future__ import annotations


def _compare(value: int, code: int, bound: int) -> bool:
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


class PureKernel:
    backend = "python"

    def __init__(self, packed: dict):
        self.n_atoms: int = packed["n_atoms"]
        self.heads: list[int] = packed["heads"]
        self.pos: list[int] = packed["pos"]
        self.neg: list[int] = packed["neg"]
        self.rule_agg_off: list[int] = packed["rule_agg_off"]
        self.agg_cmp: list[int] = packed["agg_cmp"]
        self.agg_bound: list[int] = packed["agg_bound"]
        self.agg_negated: list[int] = packed["agg_negated"]
        self.agg_elem_off: list[int] = packed["agg_elem_off"]
        self.elem_mask: list[int] = packed["elem_mask"]
        self.elem_weight: list[int] = packed["elem_weight"]
        self.n_rules = len(self.heads)

    def body_satisfied(self, rule: int, bits: int) -> bool:
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
            if holds == bool(self.agg_negated[agg]):
                return False
        return True

    def is_model(self, bits: int) -> bool:
        for rule in range(self.n_rules):
            if self.body_satisfied(rule, bits) and not (self.heads[rule] & bits):
                return False
        return True

    def is_answer_set(self, bits: int) -> bool:
        reduct = [r for r in range(self.n_rules) if self.body_satisfied(r, bits)]
        for rule in reduct:
            if not (self.heads[rule] & bits):
                return False
        if bits == 0:
            return True
        sub = (bits - 1) & bits
        while True:
            for rule in reduct:
                if self.body_satisfied(rule, sub) and not (self.heads[rule] & sub):
                    break
            else:
                return False  # proper submodel of the reduct
            if sub == 0:
                return True
            sub = (sub - 1) & bits

    def answer_sets_brute(self, limit: int | None = None) -> list[int]:
        if self.n_atoms > 25:
            raise ValueError("brute-force scan limited to 25 atoms")
        out: list[int] = []
        for bits in range(1 << self.n_atoms):
            if self.is_answer_set(bits):
                out.append(bits)
                if limit is not None and len(out) >= limit:
                    break
        return out


def aggregate_status(packed: dict, agg_index: int, true_mask: int, false_mask: int) -> bool | None:
    """Definite truth of one aggregate under a partial assignment, else None.

    Monotone comparisons use the attainable-value interval; = and != are
    decided only once every domain atom is assigned.
    """
    start = packed["agg_elem_off"][agg_index]
    end = packed["agg_elem_off"][agg_index + 1]
    base = low = high = 0
    exact = True
    for e in range(start, end):
        bit = packed["elem_mask"][e]
        w = packed["elem_weight"][e]
        if bit & true_mask:
            base += w
        elif not bit & false_mask:
            exact = False
            if w < 0:
                low += w
            else:
                high += w
    code = packed["agg_cmp"][agg_index]
    bound = packed["agg_bound"][agg_index]
    if exact:
        return _compare(base, code, bound)
    if code in (4, 5):
        return None
    low_ok = _compare(base + low, code, bound)
    high_ok = _compare(base + high, code, bound)
    if low_ok and high_ok:
        return True
    if not low_ok and not high_ok:
        return False
    return None


def body_status(packed: dict, rule: int, true_mask: int, false_mask: int) -> bool | None:
    """Definite satisfaction of a rule body under a partial assignment."""
    pos = packed["pos"][rule]
    neg = packed["neg"][rule]
    if pos & false_mask or neg & true_mask:
        return False
    settled = pos & true_mask == pos and neg & false_mask == neg
    for agg_index in range(packed["rule_agg_off"][rule], packed["rule_agg_off"][rule + 1]):
        value = aggregate_status(packed, agg_index, true_mask, false_mask)
        negated = bool(packed["agg_negated"][agg_index])
        if value is None:
            settled = False
        elif value == negated:
            return False
    return True if settled else None


def has_proper_submodel(packed: dict, bits: int, rule_indices=None) -> bool:
    """Exact search for a model strictly below bits over the given rules.

    ``rule_indices`` defaults to every rule; the answer-set check passes
    the reduct instead. Replaces the raw submask sweep when bits has many
    atoms set: necessary conditions of model-hood are propagated, so e.g.
    fact-heavy programs resolve without enumerating 2^|bits| subsets.
    """
    n = packed["n_atoms"]
    heads = packed["heads"]
    active = list(range(len(heads))) if rule_indices is None else list(rule_indices)
    full = (1 << n) - 1
    outside = full & ~bits

    def propagate(true_mask: int, false_mask: int):
        changed = True
        while changed:
            changed = False
            for r in active:
                if body_status(packed, r, true_mask, false_mask) is not True:
                    continue
                head = heads[r]
                if head & true_mask:
                    continue
                open_head = head & ~false_mask & ~true_mask
                if open_head == 0:
                    return None
                if open_head.bit_count() == 1:
                    true_mask |= open_head
                    changed = True
        return true_mask, false_mask

    def is_model(mask: int) -> bool:
        for r in active:
            if body_status(packed, r, mask, full & ~mask) is True and not heads[r] & mask:
                return False
        return True

    def search(true_mask: int, false_mask: int) -> bool:
        undecided = bits & ~(true_mask | false_mask)
        if undecided == 0:
            return true_mask != bits and is_model(true_mask)
        bit = undecided & -undecided
        for next_true, next_false in ((true_mask, false_mask | bit), (true_mask | bit, false_mask)):
            state = propagate(next_true, next_false)
            if state is not None and search(*state):
                return True
        return False

    state = propagate(0, outside)
    if state is None:
        return False
    return search(*state)
