"""Quadratic pseudo-Boolean objectives for clique and vertex cover.

A :class:`Qubo` stores ``offset + sum_i a_i x_i + sum_{i<j} a_ij x_i x_j``.
Variables are dense indices ``0..num_vars-1``; ``var_labels`` maps them back
to graph vertex labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

MC_A, MC_B = 1.0, 2.0  # clique reward / non-edge penalty
MVC_A, MVC_B = 2.0, 1.0  # uncovered-edge penalty / per-vertex cost


@dataclass(frozen=True)
class Qubo:
    num_vars: int
    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)
    offset: float = 0.0
    var_labels: tuple = ()

    def __post_init__(self):
        for (i, j), c in self.quadratic.items():
            if not i < j:
                raise ValueError(f"quadratic key ({i}, {j}) is not upper-triangular")
        if not self.var_labels:
            object.__setattr__(self, "var_labels", tuple(range(self.num_vars)))

    @classmethod
    def build(cls, num_vars, linear, quadratic, offset=0.0, var_labels=()):
        """Normalize keys to i<j, merge duplicates and drop zero terms."""
        lin, quad = {}, {}
        for i, c in linear.items():
            lin[i] = lin.get(i, 0.0) + float(c)
        for (i, j), c in quadratic.items():
            if i == j:
                lin[i] = lin.get(i, 0.0) + float(c)  # x^2 = x
                continue
            key = (i, j) if i < j else (j, i)
            quad[key] = quad.get(key, 0.0) + float(c)
        lin = {i: c for i, c in sorted(lin.items()) if c != 0.0}
        quad = {k: c for k, c in sorted(quad.items()) if c != 0.0}
        return cls(num_vars, lin, quad, float(offset), tuple(var_labels))

    def neighbors(self):
        """var -> {other var: coefficient}"""
        out = {i: {} for i in range(self.num_vars)}
        for (i, j), c in self.quadratic.items():
            out[i][j] = c
            out[j][i] = c
        return out

    def dense(self):
        """(linear vector, symmetric coupling matrix with zero diagonal)."""
        h = np.zeros(self.num_vars)
        J = np.zeros((self.num_vars, self.num_vars))
        for i, c in self.linear.items():
            h[i] = c
        for (i, j), c in self.quadratic.items():
            J[i, j] = J[j, i] = c
        return h, J

    def max_abs_coefficient(self) -> float:
        vals = [abs(c) for c in self.linear.values()]
        vals += [abs(c) for c in self.quadratic.values()]
        return max(vals, default=0.0)


def build_mc_qubo(g: Graph, A: float = MC_A, B: float = MC_B) -> Qubo:
    """``-A sum x_v + B sum_{non-edges} x_u x_v``; min value is ``-omega``."""
    linear = {i: -A for i in range(g.n)}
    quadratic = {}
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if j not in g.adj[i]:
                quadratic[(i, j)] = B
    return Qubo.build(g.n, linear, quadratic, 0.0, g.labels)


def build_mvc_qubo(g: Graph, A: float = MVC_A, B: float = MVC_B) -> Qubo:
    """Expanded ``A sum_E (1-x_u)(1-x_v) + B sum_V x_v``; min is the cover size."""
    linear = {i: B - A * len(g.adj[i]) for i in range(g.n)}
    quadratic = {(i, j): A for i, j in g.edges()}
    return Qubo.build(g.n, linear, quadratic, A * g.m, g.labels)


def evaluate(q: Qubo, assignment) -> float:
    """Objective value (offset included) of a total 0/1 assignment.

    ``assignment`` is a mapping var -> value or a sequence indexed by var.
    """
    if isinstance(assignment, dict):
        missing = [i for i in range(q.num_vars) if i not in assignment]
        if missing:
            raise KeyError(f"assignment misses variables {missing}")
        x = assignment
    else:
        if len(assignment) != q.num_vars:
            raise KeyError(f"assignment has {len(assignment)} values, need {q.num_vars}")
        x = assignment
    total = q.offset
    for i, c in q.linear.items():
        if x[i]:
            total += c
    for (i, j), c in q.quadratic.items():
        if x[i] and x[j]:
            total += c
    return total


@dataclass(frozen=True)
class Ising:
    h: dict
    J: dict
    offset: float

    def energy(self, spins) -> float:
        e = self.offset
        for i, c in self.h.items():
            e += c * spins[i]
        for (i, j), c in self.J.items():
            e += c * spins[i] * spins[j]
        return e


def to_ising(q: Qubo) -> Ising:
    """Substitute ``x = (s + 1) / 2``. The Ising offset absorbs the QUBO offset."""
    h = {i: 0.0 for i in range(q.num_vars)}
    J = {}
    offset = q.offset
    for i, c in q.linear.items():
        h[i] += c / 2
        offset += c / 2
    for (i, j), c in q.quadratic.items():
        J[(i, j)] = c / 4
        h[i] += c / 4
        h[j] += c / 4
        offset += c / 4
    h = {i: c for i, c in h.items() if c != 0.0}
    return Ising(h, J, offset)


def probe(q: Qubo, var: int, value: int) -> Qubo:
    """Fix ``x_var = value`` and eliminate it. Remaining variables are
    renumbered densely; ``var_labels`` follows them."""
    if not 0 <= var < q.num_vars:
        raise KeyError(f"unknown variable {var}")
    if value not in (0, 1):
        raise ValueError(f"probe value must be 0 or 1, got {value}")
    return fix_variables(q, {var: value})


def fix_variables(q: Qubo, fixed: dict) -> Qubo:
    """Eliminate several fixed variables at once (the probe fold, repeated)."""
    keep = [i for i in range(q.num_vars) if i not in fixed]
    new = {old: k for k, old in enumerate(keep)}
    offset = q.offset
    linear = {}
    for i, c in q.linear.items():
        if i in fixed:
            if fixed[i]:
                offset += c
        else:
            linear[new[i]] = linear.get(new[i], 0.0) + c
    quadratic = {}
    for (i, j), c in q.quadratic.items():
        fi, fj = i in fixed, j in fixed
        if fi and fj:
            if fixed[i] and fixed[j]:
                offset += c
        elif fi:
            if fixed[i]:
                linear[new[j]] = linear.get(new[j], 0.0) + c
        elif fj:
            if fixed[j]:
                linear[new[i]] = linear.get(new[i], 0.0) + c
        else:
            quadratic[(new[i], new[j])] = c
    labels = [q.var_labels[i] for i in keep]
    return Qubo.build(len(keep), linear, quadratic, offset, labels)


def persistencies(q: Qubo) -> dict:
    """First-order weak persistencies, iterated to a fixed point.

    ``x_i = 0`` is safe when ``a_i + sum_j min(0, a_ij) >= 0`` and ``x_i = 1``
    when ``a_i + sum_j max(0, a_ij) <= 0``: flipping ``x_i`` toward the fixed
    value never increases the objective, whatever the other variables are.
    Returns ``{var: value}`` in the original variable indices of ``q``.
    """
    fixed = {}
    lin = {i: q.linear.get(i, 0.0) for i in range(q.num_vars)}
    nbrs = q.neighbors()
    free = set(range(q.num_vars))
    queue = sorted(free)
    while queue:
        touched = set()
        for i in queue:
            if i not in free:
                continue
            couplings = nbrs[i].values()
            lo = lin[i] + sum(c for c in couplings if c < 0)
            hi = lin[i] + sum(c for c in couplings if c > 0)
            if lo >= 0:
                val = 0
            elif hi <= 0:
                val = 1
            else:
                continue
            fixed[i] = val
            free.discard(i)
            # fold x_i into its neighbors (probe), then rescan them
            for j, c in nbrs[i].items():
                if val:
                    lin[j] += c
                del nbrs[j][i]
                touched.add(j)
            nbrs[i] = {}
        queue = sorted(touched & free)
    return fixed


# ---------------------------------------------------------------------------
# exhaustive reference (small instances only)


def enumerate_minimum(q: Qubo) -> tuple[float, list[tuple[int, ...]]]:
    """Brute-force minimum and all minimizers. Exponential; n <= ~20."""
    if q.num_vars > 22:
        raise ValueError("exhaustive enumeration limited to 22 variables")
    n = q.num_vars
    if n == 0:
        return q.offset, [()]
    h, J = q.dense()
    X = np.array(list(itertools.product((0, 1), repeat=n)), dtype=float).reshape(-1, n)
    vals = q.offset + X @ h + 0.5 * np.einsum("ki,ij,kj->k", X, J, X)
    best = vals.min()
    # integral inputs make exact ties the norm; compare with a float guard
    hits = np.flatnonzero(vals <= best + 1e-9 * max(1.0, abs(best)))
    return float(best), [tuple(int(v) for v in X[k]) for k in hits]


# ---------------------------------------------------------------------------
# text format


def dumps(q: Qubo) -> str:
    """``vars N offset F`` header, then ``l i c`` and ``q i j c`` lines."""
    out = [f"vars {q.num_vars} offset {q.offset!r}"]
    out += [f"l {i} {c!r}" for i, c in sorted(q.linear.items())]
    out += [f"q {i} {j} {c!r}" for (i, j), c in sorted(q.quadratic.items())]
    return "\n".join(out) + "\n"


def loads(text: str) -> Qubo:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "vars" or len(lines[0]) != 4 or lines[0][2] != "offset":
        raise ValueError("missing 'vars N offset F' header")
    n, offset = int(lines[0][1]), float(lines[0][3])
    linear, quadratic = {}, {}
    for tok in lines[1:]:
        if tok[0] == "l" and len(tok) == 3:
            linear[int(tok[1])] = float(tok[2])
        elif tok[0] == "q" and len(tok) == 4:
            quadratic[(int(tok[1]), int(tok[2]))] = float(tok[3])
        else:
            raise ValueError(f"bad QUBO line {' '.join(tok)!r}")
    return Qubo.build(n, linear, quadratic, offset)
