"""Sparse exact linear algebra over the fields in fields.py.

Vectors are plain dicts {column index: nonzero coefficient}.  Column indices
are ints; whoever builds the indexing chooses the elimination order, because
pivots are always taken at the smallest index present.  That convention is
load bearing: the algebra builder encodes (path length, lexicographic rank)
into the index so that elimination happens stratum by stratum.
"""


def scaled_add_into(field, dst, src, c):
    """dst += c * src, in place, dropping entries that become zero."""
    if field.is_zero(c):
        return
    for k, v in src.items():
        val = field.add(dst.get(k, field.zero()), field.mul(c, v))
        if field.is_zero(val):
            dst.pop(k, None)
        else:
            dst[k] = val


class Eliminator:
    """Incremental reduced row echelon form.

    Stored rows are fully reduced: each has coefficient 1 at its pivot and
    no other stored pivot appears in its support.  add() returns the new
    pivot index, or None when the row was already in the span.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}
        self._where = {}

    @property
    def rank(self):
        return len(self.rows)

    def pivot_indices(self):
        return set(self.rows)

    def reduce(self, row):
        """Fully reduce a copy of row against the current span."""
        f = self.field
        row = dict(row)
        for p in [k for k in row if k in self.rows]:
            scaled_add_into(f, row, self.rows[p], f.neg(row[p]))
        return row

    def contains(self, row):
        return not self.reduce(row)

    def add(self, row):
        f = self.field
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        cinv = f.inv(row.pop(p))
        newrow = {p: f.one()}
        for k, v in row.items():
            newrow[k] = f.mul(cinv, v)
        for q in list(self._where.get(p, ())):
            c = self.rows[q].get(p)
            if c is not None:
                self._sub_scaled_from_stored(q, newrow, c)
        self.rows[p] = newrow
        for k in newrow:
            self._where.setdefault(k, set()).add(p)
        return p

    def _sub_scaled_from_stored(self, q, src, c):
        f = self.field
        row = self.rows[q]
        for k, v in src.items():
            old = row.get(k)
            val = f.sub(old if old is not None else f.zero(), f.mul(c, v))
            if f.is_zero(val):
                if old is not None:
                    del row[k]
                    s = self._where.get(k)
                    if s is not None:
                        s.discard(q)
            else:
                row[k] = val
                if old is None:
                    self._where.setdefault(k, set()).add(q)


class TrackedSpan:
    """One-directional elimination that remembers provenance.

    Each stored row carries a tag: a sparse combination of the inputs that
    produced it.  Feeding a dependent vector returns the dependency as a tag
    instead of storing anything, which is exactly what kernel computations
    want.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}

    def add(self, row, tag):
        f = self.field
        row = dict(row)
        tag = dict(tag)
        while row:
            p = min(row)
            hit = self.rows.get(p)
            if hit is None:
                break
            prow, ptag = hit
            c = row[p]
            scaled_add_into(f, row, prow, f.neg(c))
            scaled_add_into(f, tag, ptag, f.neg(c))
        if not row:
            return tag
        p = min(row)
        cinv = f.inv(row[p])
        nrow = {k: f.mul(cinv, v) for k, v in row.items()}
        ntag = {k: f.mul(cinv, v) for k, v in tag.items()}
        self.rows[p] = (nrow, ntag)
        return None


def kernel_combos(field, vectors):
    """Dependencies among the given sparse vectors.

    Returns one combination dict per dependent input, keyed by position in
    the input list; together they are a basis of the dependency space.
    """
    span = TrackedSpan(field)
    out = []
    for i, v in enumerate(vectors):
        t = span.add(v, {i: field.one()})
        if t is not None:
            out.append(t)
    return out


def express(field, basis, target):
    """Write target as a combination of the given vectors.

    Returns {position: coefficient} with zero entries dropped, or None when
    target is outside the span.  Dependent entries in basis are tolerated.
    """
    span = TrackedSpan(field)
    for i, v in enumerate(basis):
        span.add(v, {i: field.one()})
    row = dict(target)
    combo = {}
    f = field
    while row:
        p = min(row)
        hit = span.rows.get(p)
        if hit is None:
            return None
        prow, ptag = hit
        c = row[p]
        scaled_add_into(f, row, prow, f.neg(c))
        scaled_add_into(f, combo, ptag, c)
    return combo


def span_rank(field, vectors):
    e = Eliminator(field)
    for v in vectors:
        e.add(v)
    return e.rank
