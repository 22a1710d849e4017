"""Pure-Python kernels; the fallback for the compiled ``_kernels`` module.

Both modules expose the same functions with the same arguments.  Clause
structure is passed in CSR form (``ptr``/``idx`` integer arrays), atom
membership as a byte buffer indexed by atom id, and small atom sets as
64-bit masks.
"""


def first_violated(head_ptr, head_idx, body_ptr, body_idx, member):
    n_clauses = len(head_ptr) - 1
    for c in range(n_clauses):
        sat = False
        for k in range(head_ptr[c], head_ptr[c + 1]):
            if member[head_idx[k]]:
                sat = True
                break
        if sat:
            continue
        for k in range(body_ptr[c], body_ptr[c + 1]):
            if not member[body_idx[k]]:
                sat = True
                break
        if not sat:
            return c
    return -1


def horn_closure(n_atoms, head_ptr, head_idx, body_ptr, body_idx,
                 occ_ptr, occ_idx, allowed):
    """Least fixpoint of the clauses whose head meets ``allowed`` in one atom.

    Returns ``(derived, fired)``: atoms in derivation order and, for each,
    the clause that produced it.
    """
    n_clauses = len(head_ptr) - 1
    target = [-1] * n_clauses
    remaining = [0] * n_clauses
    derived = bytearray(n_atoms)
    out_atoms = []
    out_clauses = []
    queue = []
    for c in range(n_clauses):
        h = -1
        cnt = 0
        for k in range(head_ptr[c], head_ptr[c + 1]):
            a = head_idx[k]
            if allowed[a]:
                cnt += 1
                h = a
        if cnt != 1:
            continue
        target[c] = h
        remaining[c] = body_ptr[c + 1] - body_ptr[c]
        if remaining[c] == 0:
            queue.append(c)
    pos = 0
    while pos < len(queue):
        c = queue[pos]
        pos += 1
        h = target[c]
        if derived[h]:
            continue
        derived[h] = 1
        out_atoms.append(h)
        out_clauses.append(c)
        for k in range(occ_ptr[h], occ_ptr[h + 1]):
            d = occ_idx[k]
            if target[d] < 0:
                continue
            remaining[d] -= 1
            if remaining[d] == 0:
                queue.append(d)
    return out_atoms, out_clauses


def model_table(n_bits, heads, bodies):
    """Byte per interpretation mask: 1 iff the mask satisfies every clause."""
    size = 1 << n_bits
    out = bytearray(size)
    clauses = list(zip(heads, bodies))
    for m in range(size):
        ok = 1
        for h, b in clauses:
            if not (h & m) and (b & m) == b:
                ok = 0
                break
        out[m] = ok
    return out


def minimal_table(n_bits, table):
    """Byte per mask: 1 iff it is a model with no model strictly below it."""
    size = 1 << n_bits
    below = bytearray(size)
    out = bytearray(size)
    for m in range(size):
        hit = 0
        x = m
        while x:
            low = x & -x
            x ^= low
            s = m ^ low
            if table[s] or below[s]:
                hit = 1
                break
        below[m] = hit
        if table[m] and not hit:
            out[m] = 1
    return out


def is_outbound_mask(z, y, heads, bodies):
    rest = y & ~z
    for h, b in zip(heads, bodies):
        if h & z and b & rest and not b & z and not h & rest:
            return True
    return False


def is_elementary_mask(y, heads, bodies):
    """Every non-empty proper submask of ``y`` is outbound in ``y``."""
    relevant = [(h, b) for h, b in zip(heads, bodies) if h & y and b & y]
    z = (y - 1) & y
    while z:
        rest = y & ~z
        found = False
        for h, b in relevant:
            if h & z and b & rest and not b & z and not h & rest:
                found = True
                break
        if not found:
            return False
        z = (z - 1) & y
    return True


def hef_witness(n_bits, heads, bodies):
    """A disjunctive elementary mask, or 0 when none exists."""
    size = 1 << n_bits
    for y in range(3, size):
        if y & (y - 1) == 0:
            continue
        disjunctive = False
        for h in heads:
            hy = h & y
            if hy & (hy - 1):
                disjunctive = True
                break
        if disjunctive and is_elementary_mask(y, heads, bodies):
            return y
    return 0
