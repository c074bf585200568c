"""Wall-time comparison of the two evaluation routes over a seeded batch."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .charsums import build_binom_table
from .errors import CapacityError, DomainError
from .field import field_for_order
from .hypergeometric import MAX_CHARSUM_CELLS, _direct, charsum_engine


@dataclass
class BenchRow:
    index: int
    a: int
    bs: tuple[int, ...]
    cs: tuple[int, ...]
    xs: tuple[int, ...]
    direct_s: float
    charsum_s: float
    agree: bool


@dataclass
class BenchResult:
    q: int
    n: int
    seed: int
    setup_s: float
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def direct_total(self) -> float:
        return sum(r.direct_s for r in self.rows)

    @property
    def charsum_total(self) -> float:
        return sum(r.charsum_s for r in self.rows)

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.rows)

    def csv_rows(self) -> list[list]:
        header = ["index", "q", "n", "A", "B", "C", "x", "direct_s", "charsum_s", "agree"]
        out = [header]
        for r in self.rows:
            out.append([r.index, self.q, self.n, r.a, " ".join(map(str, r.bs)),
                        " ".join(map(str, r.cs)), " ".join(map(str, r.xs)),
                        f"{r.direct_s:.9f}", f"{r.charsum_s:.9f}", int(r.agree)])
        return out


def bench_instances(q: int, n: int, count: int, seed: int) -> list[tuple]:
    """Seeded instances with all arguments nonzero (a zero argument short-cuts both routes)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    m = q - 1
    rng = random.Random(f"{seed}:bench:{q}:{n}")
    out = []
    for _ in range(count):
        out.append((rng.randrange(m), tuple(rng.randrange(m) for _ in range(n)),
                    tuple(rng.randrange(m) for _ in range(n)),
                    tuple(rng.randrange(1, q) for _ in range(n))))
    return out


def _best(fn, args, repeat: int):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, value


def run_bench(q: int, n: int, count: int = 100, seed: int = 42, repeat: int = 3) -> BenchResult:
    """Time both routes per instance (best of ``repeat``).

    The binomial table and the per-(A, n) prefix weights are built before the
    clock starts; their cost is reported as ``setup_s``.
    """
    ctx = field_for_order(q)
    m = ctx.order
    if m ** (n + 1) > MAX_CHARSUM_CELLS:
        raise CapacityError(f"charsum route at q={q}, n={n} exceeds the transform limit")
    insts = bench_instances(q, n, count, seed)
    t0 = time.perf_counter()
    engine = charsum_engine(build_binom_table(ctx))
    for a in sorted({inst[0] for inst in insts}):
        engine.prefix(a, n)
    if insts:
        engine.evaluate(*insts[0])
    setup = time.perf_counter() - t0
    result = BenchResult(q, n, seed, setup)
    for i, (a, bs, cs, xs) in enumerate(insts):
        td, vd = _best(_direct, (ctx, a, bs, cs, xs), repeat)
        tc, vc = _best(engine.evaluate, (a, bs, cs, xs), repeat)
        result.rows.append(BenchRow(i, a, bs, cs, xs, td, tc, vd == vc))
    return result
