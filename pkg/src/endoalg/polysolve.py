"""Real solutions of small polynomial systems by substitution and case splits.

The solver keeps a polynomial parametrization of the unknowns by the
variables still free.  At each node it

1. drops identically-zero equations and kills the branch on a nonzero
   constant;
2. eliminates a variable from an equation that is linear in it with a
   constant coefficient (truly linear equations first);
3. otherwise splits on the factors of a reducible equation;
4. otherwise discards a univariate irreducible factor with no real root;
5. otherwise gives up on that branch and marks the result incomplete.

Every emitted component is an exact solution family: substituting its
parametrization makes all equations vanish identically.  ``complete`` means
every real solution lies on some component.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

MAX_NODES = 4000


@dataclass
class Component:
    """``values[v]`` expresses original variable v in the free ``params``."""

    params: tuple
    values: dict


@dataclass
class SolveResult:
    components: list = field(default_factory=list)
    complete: bool = True
    stuck: list = field(default_factory=list)
    nodes: int = 0


def solve_system(equations, variables, max_nodes: int = MAX_NODES) -> SolveResult:
    variables = tuple(variables)
    res = SolveResult()
    eqs = [sp.expand(e) for e in equations]
    _solve(eqs, {v: v for v in variables}, list(variables), res, max_nodes)
    return res


def _total_degree(e, free):
    return sp.Poly(e, *free).total_degree() if free else 0


def _linear_choice(eqs, free):
    """Find (equation index, variable, solved value) with constant coefficient.

    Truly linear equations are preferred, then equations of low degree.
    """
    ranked = sorted(range(len(eqs)), key=lambda i: (_total_degree(eqs[i], free), i))
    for i in ranked:
        e = eqs[i]
        poly = sp.Poly(e, *free)
        for v in free:
            if poly.degree(v) != 1:
                continue
            coeff = sp.expand(e.coeff(v, 1))
            if coeff.free_symbols or coeff == 0:
                continue
            rest = sp.expand(e - coeff * v)
            return i, v, sp.expand(-rest / coeff)
    return None


def _solve(eqs, values, free, res: SolveResult, max_nodes):
    res.nodes += 1
    if res.nodes > max_nodes:
        res.complete = False
        res.stuck.append(("node budget", eqs))
        return
    work = []
    for e in eqs:
        e = sp.expand(e)
        if e == 0:
            continue
        if not (e.free_symbols & set(free)):
            return  # nonzero constant: inconsistent branch
        if e not in work:
            work.append(e)
    if not work:
        res.components.append(Component(tuple(free), dict(values)))
        return

    choice = _linear_choice(work, free)
    if choice is not None:
        i, v, val = choice
        sub = {v: val}
        new_values = {k: sp.expand(x.subs(sub)) for k, x in values.items()}
        new_eqs = [sp.expand(e.subs(sub)) for j, e in enumerate(work) if j != i]
        _solve(new_eqs, new_values, [f for f in free if f != v], res, max_nodes)
        return

    for i, e in enumerate(work):
        _, factors = sp.factor_list(e, *free)
        bases = [f for f, _ in factors if f.free_symbols]
        if len(bases) > 1 or (len(bases) == 1 and (factors[0][1] > 1 or sp.expand(bases[0] - e) != 0)):
            others = work[:i] + work[i + 1:]
            for f in bases:
                _solve([f] + others, values, free, res, max_nodes)
            return

    for i, e in enumerate(work):
        syms = e.free_symbols & set(free)
        if len(syms) == 1:
            (x,) = syms
            if sp.Poly(e, x).count_roots() == 0:
                return  # no real solution on this branch

    res.complete = False
    res.stuck.append(("irreducible", work))


def component_points(comp: Component, variables, values=(0, 1, -1, 2)):
    """A few rational points of a component (for witnesses and spot checks)."""
    import itertools

    out = []
    for vals in itertools.product(values, repeat=len(comp.params)):
        sub = dict(zip(comp.params, vals))
        out.append(tuple(sp.Rational(comp.values[v].subs(sub)) for v in variables))
        if len(out) >= 16:
            break
    return out
