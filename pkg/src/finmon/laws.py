"""The law catalog: every functor/monad property as a finite check.

Each law declares its bound variables (domain elements, carrier values,
or function tables) and a checker producing the two sides of a pointwise
equality. The runner enumerates the variable spaces in canonical order,
compares sides by canonical structural equality, and reports the first
failing assignment, which for fully exhaustive runs is the least
counterexample in the lexicographic order of the variable tuple.

Quantifier budgets apply per variable: a space that fits the budget is
visited exhaustively in canonical order, a larger one contributes
budget-many seeded samples (with replacement). When any variable is
sampled the overall product is also capped at the budget, since a full
product of sample lists would multiply far past the requested effort.

Premise-filtered laws (mapPresEE, kleisliPresEE, liftPresEE) quantify
over pointwise-equality classes of arrows. Function tables are
extensional by construction, so each class has exactly one member and
the primed arrow is the class representative itself. The checks still
run both sides through independent wrappers; what they certify is that
the operations are functions of the table, not of its identity.

Two suite views exist. The "fat" view checks all 25 laws, treating bind
and Kleisli composition as independent operations whose relationship to
join/map is itself a law (BJ, KJ) and whose agreement with the
bind-derived forms is checked (E1-E3). The "thin" view treats bind and
Kleisli composition as derived from join/map, so those five checks are
definitional and skipped.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .instances import FunctorInstance, MonadInstance
from .reports import LawReport, QuantifierStat
from .values import (
    Atom,
    Base,
    CarrierDesc,
    CarrierOverflow,
    CarrierTooLarge,
    FiniteType,
    FnTable,
    Quantifier,
    Value,
    enumerate_carrier,
    enumerate_domain,
    enumerate_functions,
    function_space_size,
    render_carrier,
    render_table,
    render_value,
    sub_seed,
    table_fn,
    DEFAULT_CARRIER_CAP,
)

__all__ = [
    "VarSpec", "Law", "SuiteProfile", "law_catalog", "law_by_id",
    "check_law", "run_suite", "LAW_IDS",
]

Instance = Union[MonadInstance, FunctorInstance]


@dataclass(frozen=True, slots=True)
class VarSpec:
    """One bound variable: an element of a role domain ("atom"), a value
    of a carrier expression ("carrier"), or a function table ("fn") from
    a role domain into a carrier expression. Carrier expressions are of
    the form "B", "M B", "M M A"."""

    kind: str
    name: str
    dom: str = ""
    cod: str = ""


@dataclass(frozen=True, eq=False)
class Law:
    id: str
    name: str
    statement: str
    variables: tuple[VarSpec, ...]
    make_checker: Callable[[Instance], Callable[[dict], tuple[Value, Value]]]
    needs: tuple[str, ...] = ("map",)
    views: tuple[str, ...] = ("thin", "fat")


def resolve_carrier(expr: str, inst: Instance, domains: dict[str, FiniteType]) -> CarrierDesc:
    parts = expr.split()
    role = parts[-1]
    if role not in domains:
        raise KeyError(f"law references role {role!r} missing from domain map")
    desc: CarrierDesc = Base(domains[role])
    for marker in parts[:-1]:
        if marker != "M":
            raise ValueError(f"bad carrier expression {expr!r}")
        desc = inst.carrier_of(desc)
    return desc


# ---------------------------------------------------------------------------
# checkers
#
# Each maker returns a closure from variable environment to (lhs, rhs).
# Makers may carry per-run caches; caches never outlive one check_law call.


def _mk_map_pres_id(inst):
    def check(env):
        ma = env["ma"]
        return inst.map(lambda v: v, ma), ma

    return check


def _mk_map_pres_comp(inst):
    def check(env):
        f, g, ma = env["f"], env["g"], env["ma"]
        ff, gf = table_fn(f), table_fn(g)
        lhs = inst.map(lambda v: gf(ff(v)), ma)
        rhs = inst.map(gf, inst.map(ff, ma))
        return lhs, rhs

    return check


def _mk_map_pres_ee(inst):
    def check(env):
        f, ma = env["f"], env["ma"]
        lhs = inst.map(table_fn(f), ma)
        rhs = inst.map(table_fn(f), ma)  # the class representative of f
        return lhs, rhs

    return check


def _mk_triangle_left(inst):
    def check(env):
        ma = env["ma"]
        return inst.join(inst.pure(ma)), ma

    return check


def _mk_triangle_right(inst):
    def check(env):
        ma = env["ma"]
        return inst.join(inst.map(inst.pure, ma)), ma

    return check


def _mk_square(inst):
    def check(env):
        mmma = env["mmma"]
        return inst.join(inst.join(mmma)), inst.join(inst.map(inst.join, mmma))

    return check


def _mk_pure_nat_trans(inst):
    def check(env):
        f, a = env["f"], env["a"]
        ff = table_fn(f)
        return inst.map(ff, inst.pure(a)), inst.pure(ff(a))

    return check


def _mk_join_nat_trans(inst):
    def check(env):
        f, mma = env["f"], env["mma"]
        ff = table_fn(f)
        lhs = inst.map(ff, inst.join(mma))
        rhs = inst.join(inst.map(lambda inner: inst.map(ff, inner), mma))
        return lhs, rhs

    return check


def _mk_kleisli_join_map_spec(inst):
    def check(env):
        f, g, a = env["f"], env["g"], env["a"]
        ff, gf = table_fn(f), table_fn(g)
        lhs = inst.kleisli(ff, gf)(a)
        rhs = inst.join(inst.map(gf, ff(a)))
        return lhs, rhs

    return check


def _mk_bind_join_map_spec(inst):
    def check(env):
        f, ma = env["f"], env["ma"]
        ff = table_fn(f)
        return inst.bind(ma, ff), inst.join(inst.map(ff, ma))

    return check


def _mk_pure_left_id_kleisli(inst):
    def check(env):
        f, a = env["f"], env["a"]
        ff = table_fn(f)
        return inst.kleisli(inst.pure, ff)(a), ff(a)

    return check


def _mk_pure_right_id_kleisli(inst):
    def check(env):
        f, a = env["f"], env["a"]
        ff = table_fn(f)
        return inst.kleisli(ff, inst.pure)(a), ff(a)

    return check


def _kleisli_entries_cache(inst):
    """Pointwise results of f >=> g per domain atom, memoized on the
    table pair. Shared by the associativity-shaped checkers, where the
    same composition is revisited across the rest of the product."""
    cache: dict = {}

    def entries(f: FnTable, g: FnTable) -> tuple[Value, ...]:
        key = (f, g)
        got = cache.get(key)
        if got is None:
            kl = inst.kleisli(table_fn(f), table_fn(g))
            got = tuple(kl(a) for a in enumerate_domain(f.domain))
            cache[key] = got
        return got

    return entries


def _mk_kleisli_assoc(inst):
    entries = _kleisli_entries_cache(inst)
    lift_cache: dict = {}
    rhs_cache: dict = {}

    def check(env):
        f, g, h, a = env["f"], env["g"], env["h"], env["a"]
        fga = entries(f, g)[a.index]
        lkey = (h, fga)
        lhs = lift_cache.get(lkey)
        if lhs is None:
            lhs = inst.join(inst.map(table_fn(h), fga))
            lift_cache[lkey] = lhs
        fa = f.entries[a.index]
        rkey = (g, h, fa)
        rhs = rhs_cache.get(rkey)
        if rhs is None:
            gh = entries(g, h)
            rhs = inst.join(inst.map(lambda b: gh[b.index], fa))
            rhs_cache[rkey] = rhs
        return lhs, rhs

    return check


def _mk_kleisli_pres_ee(inst):
    def check(env):
        f, g, a = env["f"], env["g"], env["a"]
        lhs = inst.kleisli(table_fn(f), table_fn(g))(a)
        rhs = inst.kleisli(table_fn(f), table_fn(g))(a)  # primed pair
        return lhs, rhs

    return check


def _mk_kleisli_leapfrog(inst):
    def check(env):
        f, g, a = env["f"], env["g"], env["a"]
        ff, gf = table_fn(f), table_fn(g)
        lhs = inst.kleisli(ff, gf)(a)
        lift_g = inst.kleisli(lambda mv: mv, gf)
        rhs = lift_g(ff(a))
        return lhs, rhs

    return check


def _mk_pure_left_id_bind(inst):
    def check(env):
        f, a = env["f"], env["a"]
        ff = table_fn(f)
        return inst.bind(inst.pure(a), ff), ff(a)

    return check


def _mk_pure_right_id_bind(inst):
    def check(env):
        ma = env["ma"]
        return inst.bind(ma, inst.pure), ma

    return check


def _mk_bind_assoc(inst):
    bind_cache: dict = {}

    def bound(g: FnTable, mv: Value) -> Value:
        key = (g, mv)
        got = bind_cache.get(key)
        if got is None:
            got = inst.bind(mv, table_fn(g))
            bind_cache[key] = got
        return got

    def check(env):
        f, g, ma = env["f"], env["g"], env["ma"]
        ff = table_fn(f)
        lhs = bound(g, inst.bind(ma, ff))
        rhs = inst.bind(ma, lambda a: bound(g, ff(a)))
        return lhs, rhs

    return check


def _mk_lift_pres_ee(inst):
    def check(env):
        f, ma = env["f"], env["ma"]
        lhs = inst.bind(ma, table_fn(f))
        rhs = inst.bind(ma, table_fn(f))  # the class representative of f
        return lhs, rhs

    return check


def _mk_triangle_right_from_bind(inst):
    def check(env):
        ma = env["ma"]
        lhs = inst.bind(inst.bind(ma, lambda a: inst.pure(inst.pure(a))), lambda x: x)
        return lhs, ma

    return check


def _mk_map_from_bind(inst):
    def check(env):
        f, ma = env["f"], env["ma"]
        ff = table_fn(f)
        return inst.map(ff, ma), inst.bind(ma, lambda a: inst.pure(ff(a)))

    return check


def _mk_join_from_bind(inst):
    def check(env):
        mma = env["mma"]
        return inst.join(mma), inst.bind(mma, lambda x: x)

    return check


def _mk_kleisli_from_bind(inst):
    def check(env):
        f, g, a = env["f"], env["g"], env["a"]
        ff, gf = table_fn(f), table_fn(g)
        return inst.kleisli(ff, gf)(a), inst.bind(ff(a), gf)

    return check


def _mk_map_join_lemma(inst):
    def check(env):
        g, f, ma = env["g"], env["f"], env["ma"]
        gf, ff = table_fn(g), table_fn(f)
        lhs = inst.map(ff, inst.join(inst.map(gf, ma)))
        rhs = inst.join(inst.map(lambda a: inst.map(ff, gf(a)), ma))
        return lhs, rhs

    return check


def _mk_map_kleisli_lemma(inst):
    entries = _kleisli_entries_cache(inst)

    def check(env):
        f, g, h, a = env["f"], env["g"], env["h"], env["a"]
        hf = table_fn(h)
        lhs = inst.map(hf, entries(f, g)[a.index])
        gf = table_fn(g)
        rhs = inst.kleisli(table_fn(f), lambda b: inst.map(hf, gf(b)))(a)
        return lhs, rhs

    return check


# ---------------------------------------------------------------------------
# the catalog

_MONAD_OPS = ("map", "pure", "join", "bind", "kleisli")


def law_catalog() -> tuple[Law, ...]:
    """All 25 laws, in stable catalog order."""
    V = VarSpec
    laws = (
        Law("F1", "mapPresId", "map id ≐ id",
            (V("carrier", "ma", cod="M A"),), _mk_map_pres_id),
        Law("F2", "mapPresComp", "map (g ∘ f) ≐ map g ∘ map f",
            (V("fn", "f", dom="A", cod="B"), V("fn", "g", dom="B", cod="C"),
             V("carrier", "ma", cod="M A")), _mk_map_pres_comp),
        Law("F3", "mapPresEE", "f ≐ g -> map f ≐ map g",
            (V("fn", "f", dom="A", cod="B"), V("carrier", "ma", cod="M A")),
            _mk_map_pres_ee),
        Law("T1", "triangleLeft", "join ∘ pure ≐ id",
            (V("carrier", "ma", cod="M A"),), _mk_triangle_left,
            needs=("map", "pure", "join")),
        Law("T2", "triangleRight", "join ∘ map pure ≐ id",
            (V("carrier", "ma", cod="M A"),), _mk_triangle_right,
            needs=("map", "pure", "join")),
        Law("T3", "square", "join ∘ join ≐ join ∘ map join",
            (V("carrier", "mmma", cod="M M M A"),), _mk_square,
            needs=("map", "join")),
        Law("T4", "pureNatTrans", "map f ∘ pure ≐ pure ∘ f",
            (V("fn", "f", dom="A", cod="B"), V("atom", "a", dom="A")),
            _mk_pure_nat_trans, needs=("map", "pure")),
        Law("T5", "joinNatTrans", "map f ∘ join ≐ join ∘ map (map f)",
            (V("fn", "f", dom="A", cod="B"), V("carrier", "mma", cod="M M A")),
            _mk_join_nat_trans, needs=("map", "join")),
        Law("KJ", "kleisliJoinMapSpec", "(f >=> g) ≐ join ∘ map g ∘ f",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("atom", "a", dom="A")), _mk_kleisli_join_map_spec,
            needs=_MONAD_OPS, views=("fat",)),
        Law("BJ", "bindJoinMapSpec", "(>>= f) ≐ join ∘ map f",
            (V("fn", "f", dom="A", cod="M B"), V("carrier", "ma", cod="M A")),
            _mk_bind_join_map_spec, needs=("map", "join", "bind"), views=("fat",)),
        Law("D1", "pureLeftIdKleisli", "(pure >=> f) ≐ f",
            (V("fn", "f", dom="A", cod="M B"), V("atom", "a", dom="A")),
            _mk_pure_left_id_kleisli, needs=_MONAD_OPS),
        Law("D2", "pureRightIdKleisli", "(f >=> pure) ≐ f",
            (V("fn", "f", dom="A", cod="M B"), V("atom", "a", dom="A")),
            _mk_pure_right_id_kleisli, needs=_MONAD_OPS),
        Law("D3", "kleisliAssoc", "((f >=> g) >=> h) ≐ (f >=> (g >=> h))",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("fn", "h", dom="C", cod="M D"), V("atom", "a", dom="A")),
            _mk_kleisli_assoc, needs=_MONAD_OPS),
        Law("D4", "kleisliPresEE", "f ≐ f', g ≐ g' -> (f >=> g) ≐ (f' >=> g')",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("atom", "a", dom="A")), _mk_kleisli_pres_ee, needs=_MONAD_OPS),
        Law("D5", "kleisliLeapfrog", "(f >=> g) ≐ (id >=> g) ∘ f",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("atom", "a", dom="A")), _mk_kleisli_leapfrog, needs=_MONAD_OPS),
        Law("W1", "pureLeftIdBind", "(λ a => pure a >>= f) ≐ f",
            (V("fn", "f", dom="A", cod="M B"), V("atom", "a", dom="A")),
            _mk_pure_left_id_bind, needs=("pure", "bind")),
        Law("W2", "pureRightIdBind", "(>>= pure) ≐ id",
            (V("carrier", "ma", cod="M A"),), _mk_pure_right_id_bind,
            needs=("pure", "bind")),
        Law("W3", "bindAssoc", "(ma >>= f) >>= g ≐ ma >>= (λ a => f a >>= g)",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("carrier", "ma", cod="M A")), _mk_bind_assoc, needs=("bind",)),
        Law("W4", "liftPresEE", "f ≐ g -> (>>= f) ≐ (>>= g)",
            (V("fn", "f", dom="A", cod="M B"), V("carrier", "ma", cod="M A")),
            _mk_lift_pres_ee, needs=("bind",)),
        Law("W5", "triangleRightFromBind", "(λ ma => (ma >>= pure ∘ pure) >>= id) ≐ id",
            (V("carrier", "ma", cod="M A"),), _mk_triangle_right_from_bind,
            needs=("pure", "bind")),
        Law("E1", "mapFromBindAgrees", "map f ≐ (>>= pure ∘ f)",
            (V("fn", "f", dom="A", cod="B"), V("carrier", "ma", cod="M A")),
            _mk_map_from_bind, needs=("map", "pure", "bind"), views=("fat",)),
        Law("E2", "joinFromBindAgrees", "join ≐ (>>= id)",
            (V("carrier", "mma", cod="M M A"),), _mk_join_from_bind,
            needs=("join", "bind"), views=("fat",)),
        Law("E3", "kleisliFromBindAgrees", "(f >=> g) ≐ (λ a => f a >>= g)",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("atom", "a", dom="A")), _mk_kleisli_from_bind,
            needs=_MONAD_OPS, views=("fat",)),
        Law("L1", "mapJoinLemma", "(map f ∘ join ∘ map g) ≐ (join ∘ map (map f ∘ g))",
            (V("fn", "g", dom="A", cod="M B"), V("fn", "f", dom="B", cod="C"),
             V("carrier", "ma", cod="M A")), _mk_map_join_lemma,
            needs=("map", "join")),
        Law("L2", "mapKleisliLemma", "(map h ∘ (f >=> g)) ≐ (f >=> map h ∘ g)",
            (V("fn", "f", dom="A", cod="M B"), V("fn", "g", dom="B", cod="M C"),
             V("fn", "h", dom="C", cod="D"), V("atom", "a", dom="A")),
            _mk_map_kleisli_lemma, needs=_MONAD_OPS),
    )
    return laws


LAW_IDS = tuple(law.id for law in law_catalog())

_CATALOG_BY_ID = {law.id: law for law in law_catalog()}


def law_by_id(law_id: str) -> Law:
    try:
        return _CATALOG_BY_ID[law_id]
    except KeyError:
        raise KeyError(f"unknown law id {law_id!r}; known: {', '.join(LAW_IDS)}")


# ---------------------------------------------------------------------------
# the runner


def _candidates(
    vs: VarSpec,
    idx: int,
    inst: Instance,
    domains: dict[str, FiniteType],
    q: Quantifier,
    cap: int,
):
    """Candidate list, space description, true space size and mode for
    one bound variable."""
    if vs.kind == "atom":
        dom = domains[vs.dom]
        full = list(enumerate_domain(dom))
        space = vs.dom
        size = len(full)
        if size <= q.budget:
            return full, space, size, "exhaustive"
        rng = random.Random(sub_seed(q.seed, idx))
        return [full[rng.randrange(size)] for _ in range(q.budget)], space, size, "sampled"
    if vs.kind == "carrier":
        desc = resolve_carrier(vs.cod, inst, domains)
        full = enumerate_carrier(desc, cap)
        space = render_carrier(desc)
        size = len(full)
        if size <= q.budget:
            return list(full), space, size, "exhaustive"
        rng = random.Random(sub_seed(q.seed, idx))
        return [full[rng.randrange(size)] for _ in range(q.budget)], space, size, "sampled"
    if vs.kind == "fn":
        dom = domains[vs.dom]
        cod = resolve_carrier(vs.cod, inst, domains)
        size = function_space_size(dom, cod)
        space = f"{vs.dom}->{render_carrier(cod)}"
        sub = Quantifier(budget=q.budget, seed=sub_seed(q.seed, idx))
        cands = list(enumerate_functions(dom, cod, sub, cap))
        mode = "exhaustive" if size <= q.budget else "sampled"
        return cands, space, size, mode
    raise ValueError(f"unknown variable kind {vs.kind!r}")


def _render_binding(v) -> str:
    if isinstance(v, FnTable):
        return render_table(v)
    return render_value(v)


def check_law(
    law: Law,
    inst: Instance,
    domains: dict[str, FiniteType],
    q: Quantifier,
    cap: int = DEFAULT_CARRIER_CAP,
) -> LawReport:
    """Quantify per the law's shape and evaluate its checker, recording
    the first (least, when exhaustive) counterexample."""
    t0 = time.perf_counter()
    report = LawReport(
        law_id=law.id,
        instance=getattr(inst, "name", "?"),
        sizes={k: d.size for k, d in sorted(domains.items())},
    )
    missing = [op for op in law.needs if not hasattr(inst, op)]
    if missing:
        raise ValueError(
            f"law {law.id} needs operations {missing} that instance "
            f"{report.instance!r} does not provide"
        )
    try:
        spaces = [
            _candidates(vs, i, inst, domains, q, cap)
            for i, vs in enumerate(law.variables)
        ]
    except CarrierTooLarge as exc:
        report.passed = False
        report.diagnostic = str(exc)
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
        return report
    report.quantifiers = [
        QuantifierStat(vs.name, space, size, mode, len(cands))
        for vs, (cands, space, size, mode) in zip(law.variables, spaces)
    ]
    any_sampled = any(mode == "sampled" for _, _, _, mode in spaces)
    eval_cap = q.budget if any_sampled else None

    checker = law.make_checker(inst)
    names = [vs.name for vs in law.variables]
    checked = 0
    try:
        for combo in _product([cands for cands, _, _, _ in spaces]):
            if eval_cap is not None and checked >= eval_cap:
                break
            checked += 1
            env = dict(zip(names, combo))
            lhs, rhs = checker(env)
            if lhs != rhs:
                report.passed = False
                report.witness = {
                    name: _render_binding(val) for name, val in env.items()
                }
                report.witness["lhs"] = render_value(lhs)
                report.witness["rhs"] = render_value(rhs)
                break
    except CarrierOverflow as exc:
        report.passed = False
        report.diagnostic = str(exc)
    report.checked = checked
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def _product(spaces: list[list]) -> Iterable[tuple]:
    if not spaces:
        yield ()
        return
    yield from itertools.product(*spaces)


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True, slots=True)
class SuiteProfile:
    """Declarative description of one suite run: which laws against which
    instance at which sizes, under which quantifier."""

    name: str
    instance: str
    laws: tuple[str, ...] = ()  # empty means: every law the view admits
    view: str = "fat"
    sizes: tuple[tuple[str, int], ...] = (("A", 2), ("B", 2), ("C", 2), ("D", 2))
    max_len: int = 2
    max_support: int = 2
    budget: int = 100_000
    seed: int = 0
    carrier_cap: int = DEFAULT_CARRIER_CAP

    def domain_map(self) -> dict[str, FiniteType]:
        return {role: FiniteType(role, n) for role, n in self.sizes}

    def selected_laws(self) -> tuple[Law, ...]:
        if self.view not in ("thin", "fat"):
            raise ValueError(f"unknown suite view {self.view!r}")
        chosen = []
        for law in law_catalog():
            if self.laws and law.id not in self.laws:
                continue
            if not self.laws and self.view not in law.views:
                continue
            chosen.append(law)
        if self.laws:
            known = {law.id for law in law_catalog()}
            bad = [i for i in self.laws if i not in known]
            if bad:
                raise KeyError(f"unknown law ids in suite {self.name!r}: {bad}")
        return tuple(chosen)


def run_suite(inst: Instance, profile: SuiteProfile) -> list[LawReport]:
    """Run every law the profile selects, in catalog order. Functor-only
    instances (reader) are limited to the functor laws; selecting F3 for
    the reader also appends the level-2 tower check, since pointwise
    equality of function-valued outputs has a second layer there."""
    domains = profile.domain_map()
    q = Quantifier(budget=profile.budget, seed=profile.seed)
    reports = []
    for law in profile.selected_laws():
        if any(not hasattr(inst, op) for op in law.needs):
            if profile.laws:
                raise ValueError(
                    f"suite {profile.name!r} selects law {law.id} but instance "
                    f"{getattr(inst, 'name', '?')!r} lacks an operation it needs"
                )
            continue  # "all laws" on a functor instance: run what applies
        reports.append(check_law(law, inst, domains, q, cap=profile.carrier_cap))
    if isinstance(inst, FunctorInstance) and inst.name == "reader":
        wants_f3 = (not profile.laws) or ("F3" in profile.laws)
        if wants_f3:
            from .instances import reader_pres_ee2_report

            env = domains.get("E") or FiniteType("E", 2)
            reports.append(
                reader_pres_ee2_report(
                    env,
                    domains["A"],
                    domains["B"],
                    budget=profile.budget,
                    seed=profile.seed,
                )
            )
    return reports
