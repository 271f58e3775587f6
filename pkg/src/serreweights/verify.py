"""Exhaustive verification suites.

A suite splits its parameter space into units (a chunk of b-vectors or of
characters for one (p, r)), runs them serially or in a process pool, and
merges results in unit order so the report does not depend on the number
of workers.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import breuil, kernels
from .arithmetic import CharExp, FieldContext, InputError
from .galois import Irreducible, Reducible, j_regular_differences
from .types_jh import total_dimension, verify_unique_jh
from .weights import SerreWeight, b_vectors

log = logging.getLogger(__name__)

CHUNK = 32
MAX_LISTED = 1000


def _v(ctx: FieldContext, prop: str, detail: dict) -> dict:
    return {"params": {"p": ctx.p, "r": ctx.r}, "property": prop, "status": "fail",
            "detail": detail}


def _reducible_data(ctx: FieldContext, b, J: int) -> Reducible:
    s1 = sum(b[i - 1] * ctx.tau_exp(i) for i in range(1, ctx.r + 1) if (J >> (i % ctx.r)) & 1)
    s2 = sum(b[i - 1] * ctx.tau_exp(i) for i in range(1, ctx.r + 1) if not (J >> (i % ctx.r)) & 1)
    return Reducible(CharExp(ctx, 1, s1), CharExp(ctx, 1, s2))


def _irreducible_theta(ctx: FieldContext, b, J: int) -> int:
    n = 2 * ctx.r
    return sum(b[(i - 1) % ctx.r] * ctx.sigma_exp(i) for i in range(n) if (J >> i) & 1) % ctx.e2


def unit_typeswts(ctx, bs):
    cases, bad, cnt = 0, [], {"dimension_checks": 0}
    for b in bs:
        w = SerreWeight((0,) * ctx.r, tuple(b))
        for J in range(ctx.full_mask() + 1):
            cases += 1
            rep = verify_unique_jh(ctx, _reducible_data(ctx, b, J), w, J)
            cnt["dimension_checks"] += 1
            if not rep.ok:
                bad.append(_v(ctx, "unique-jh", {"b": list(b), "J": J, "compatible_K": rep.compatible}))
            if total_dimension(rep.factors) != ctx.q + 1:
                bad.append(_v(ctx, "dimension", {"b": list(b), "J": J}))
    return cases, bad, cnt


def unit_typeswts2(ctx, bs):
    cases, bad, cnt = 0, [], {"dimension_checks": 0}
    for b in bs:
        w = SerreWeight((0,) * ctx.r, tuple(b))
        for J in kernels.full_subsets(ctx.r):
            cases += 1
            theta = CharExp(ctx, 2, _irreducible_theta(ctx, b, J))
            try:
                data = Irreducible(theta)
            except InputError:
                bad.append(_v(ctx, "not-irreducible", {"b": list(b), "J": J}))
                continue
            rep = verify_unique_jh(ctx, data, w, J)
            cnt["dimension_checks"] += 1
            if not rep.ok:
                bad.append(_v(ctx, "unique-jh", {"b": list(b), "J": J, "compatible_K": rep.compatible}))
            if total_dimension(rep.factors) != ctx.q - 1:
                bad.append(_v(ctx, "dimension", {"b": list(b), "J": J}))
    return cases, bad, cnt


def unit_tau_identity(ctx, bs):
    cases, mism = kernels.sweep_tau_identity(ctx.p, ctx.r, [tuple(b) for b in bs])
    bad = [_v(ctx, "tau-identity", {"a_exp": a, "b": list(b), "J": J}) for a, b, J in mism]
    return cases, bad, {}


def unit_fl(ctx, bs):
    cases, bad, cnt = 0, [], {"property_checks": 0}
    for b in bs:
        for J in range(ctx.full_mask() + 1):
            cases += 1
            for res in breuil.fl_check_properties(ctx, b, J):
                cnt["property_checks"] += 1
                if not res.passed:
                    bad.append(_v(ctx, "fl-" + res.property, {"b": list(b), "J": J, "index": res.index}))
    return cases, bad, cnt


def unit_rank1(ctx, thetas):
    cases, bad = 0, []
    for t in thetas:
        n, v = breuil.rank1_oracle_case(ctx, t)
        cases += n
        bad.extend(v)
    return cases, bad, {}


def unit_jhcompat(ctx, thetas):
    cases, bad, cnt = 0, [], {"degenerate": 0, "certified": 0}
    for t in thetas:
        n, c, v = breuil.jhcompat_case(ctx, t)
        cases += n
        bad.extend(v)
        for k in c:
            cnt[k] += c[k]
    return cases, bad, cnt


def unit_lift_model(ctx, bs):
    cases, bad = breuil.verify_lift_implies_model(ctx, bs)
    return cases, bad, {}


def unit_lemma(ctx, bs):
    jreg = j_regular_differences(ctx)
    cases, bad, cnt = 0, [], {"hypothesis_holds": 0}
    for b in bs:
        n, h, v = breuil.lemma_compat_case(ctx, b, jreg)
        cases += n
        cnt["hypothesis_holds"] += h
        bad.extend(v)
    return cases, bad, cnt


def unit_weak(ctx, bs):
    cases, v = kernels.sweep_weak_regularity(ctx.p, ctx.r, [tuple(b) for b in bs])
    bad = [_v(ctx, reason, {"type": kind, "a_exp": a, "b": list(b), "J": J})
           for kind, a, b, J, reason in v]
    return cases, bad, {"dimension_checks": cases}


def _regular(ctx):
    return b_vectors(ctx, "regular")


def _thetas(ctx):
    return list(range(1, ctx.e1))


@dataclass(frozen=True)
class Suite:
    name: str
    items: Callable[[FieldContext], list]
    run: Callable
    description: str
    skip: Optional[Callable[[FieldContext], Optional[str]]] = None


def _skip_lemma(ctx):
    if ctx.r == 1:
        return "r = 1 is the deferred Q_p branch"
    return None


SUITES = {s.name: s for s in [
    Suite("typeswts", _regular, unit_typeswts,
          "unique compatible JH factor, principal series types"),
    Suite("typeswts2", _regular, unit_typeswts2,
          "unique compatible JH factor, cuspidal types"),
    Suite("tau-identity", _regular, unit_tau_identity,
          "two constructions of the cuspidal type agree (all a)"),
    Suite("fl-properties", _regular, unit_fl, "the twelve properties of the FL quantities"),
    Suite("rank1-oracle", _thetas, unit_rank1,
          "closed-form generic fibre against the m1/n1 route"),
    Suite("jhcompat-witness", _thetas, unit_jhcompat,
          "the (K, L) witness certifies a compatible JH factor"),
    Suite("lift-model", _regular, unit_lift_model, "rank-one sub of a type-J lift is of class J"),
    Suite("lemma-compat", breuil.lemma_compat_weights, unit_lemma,
          "reducible branch of the local compatibility lemma", _skip_lemma),
    Suite("weak-regularity", _regular, unit_weak,
          "JH factors of types of regular weights are weakly regular (all a)"),
]}


def _run_unit(task):
    name, p, r, items, deadline = task
    if deadline is not None and time.time() > deadline:
        return None
    ctx = FieldContext(p, r)
    return SUITES[name].run(ctx, items)


@dataclass
class Report:
    suite: str
    ps: list[int]
    rs: list[int]
    cases: int = 0
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    summary: list[dict] = field(default_factory=list)
    truncated: bool = False
    wall_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    @property
    def status(self) -> str:
        if self.violation_count:
            return "fail"
        return "partial" if self.truncated else "pass"

    def to_json(self) -> dict:
        # wall time is left out so that bodies are reproducible
        return {"suite": self.suite, "params": {"p": self.ps, "r": self.rs},
                "status": self.status, "cases": self.cases,
                "violation_count": self.violation_count,
                "violations": self.violations, "counters": self.counters,
                "summary": self.summary, "truncated": self.truncated}


def _chunks(seq, n):
    return [seq[i:i + n] for i in range(0, len(seq), n)] or []


def run_suite(name: str, ps: Sequence[int], rs: Sequence[int], jobs: int = 1,
              max_seconds: Optional[float] = None, chunk: int = CHUNK) -> Report:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    ps = sorted(set(ps))
    rs = sorted(set(rs))
    ctxs = [FieldContext(p, r) for p in ps for r in rs]
    start = time.time()
    deadline = None if max_seconds is None else start + max_seconds
    tasks, owners, skipped = [], [], {}
    for ctx in ctxs:
        why = suite.skip(ctx) if suite.skip else None
        if why:
            skipped[(ctx.p, ctx.r)] = why
            continue
        for part in _chunks(suite.items(ctx), chunk):
            tasks.append((name, ctx.p, ctx.r, part, deadline))
            owners.append((ctx.p, ctx.r))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_unit, tasks))
    else:
        results = [_run_unit(t) for t in tasks]
    rep = Report(name, ps, rs)
    per = {(c.p, c.r): {"cases": 0, "violations": 0, "units": 0, "units_done": 0} for c in ctxs}
    allv = []
    for owner, res in zip(owners, results):
        per[owner]["units"] += 1
        if res is None:
            rep.truncated = True
            continue
        cases, bad, cnt = res
        per[owner]["units_done"] += 1
        per[owner]["cases"] += cases
        per[owner]["violations"] += len(bad)
        rep.cases += cases
        allv.extend(bad)
        for k, v in cnt.items():
            rep.counters[k] = rep.counters.get(k, 0) + v
    allv.sort(key=lambda d: json.dumps(d, sort_keys=True))
    rep.violation_count = len(allv)
    rep.violations = allv[:MAX_LISTED]
    for (p, r), s in sorted(per.items()):
        row = {"params": {"p": p, "r": r}, "cases": s["cases"], "violations": s["violations"],
               "complete": s["units_done"] == s["units"]}
        if (p, r) in skipped:
            row["skipped"] = skipped[(p, r)]
        rep.summary.append(row)
    rep.counters = dict(sorted(rep.counters.items()))
    rep.wall_seconds = time.time() - start
    log.info("suite %s: %d cases, %d violations, %.2fs (backend %s)",
             name, rep.cases, rep.violation_count, rep.wall_seconds, kernels.BACKEND)
    return rep


def default_jobs() -> int:
    return os.cpu_count() or 1
