"""Benchmark harness: sweep random machines through the learner.

Each (state count, alphabet size, sample index) cell gets its own
derived seed, its own generated target and an isolated learning session
under a per-sample timeout.  One CSV row per sample; failures are
recorded in the row, never abort the sweep.  Row order follows the
(states, alphabet, sample) grid regardless of completion order.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InvalidInput, LearnTimeout, WorkbenchError
from .generate import GenConfig, derive_seed, generate_droca
from .learning import LearnConfig, SimulatedTeacher, Stats, learn
from .sat import SolverConfig

CSV_HEADER = ("seed", "target_states", "alphabet", "success", "wall_ms",
              "learnt_states", "n_seq", "n_mq", "n_cv", "n_sat",
              "max_ce_len", "final_d", "reason")


@dataclass(frozen=True)
class BenchConfig:
    min_states: int
    max_states: int
    samples: int
    seed: int
    timeout_s: float
    min_alphabet: int = 2
    max_alphabet: int = 2
    restricted: bool = False
    jobs: int = 1
    out_path: str | None = None
    solver: SolverConfig = field(default=SolverConfig())

    def __post_init__(self):
        if self.max_states < self.min_states or self.max_alphabet < self.min_alphabet:
            raise InvalidInput("empty state or alphabet range")
        if self.samples < 1:
            raise InvalidInput("samples must be positive")
        if self.timeout_s <= 0:
            raise InvalidInput("timeout must be positive")
        if self.jobs < 1:
            raise InvalidInput("jobs must be positive")


def run_sample(n_states: int, alphabet_size: int, seed: int, restricted: bool,
               timeout_s: float, backend: str) -> dict:
    """Generate one target, learn it, and report one CSV row."""
    stats = Stats(seed=seed, target_states=n_states, alphabet=alphabet_size)
    reason = ""
    start = time.monotonic()
    try:
        target = generate_droca(GenConfig(n_states=n_states,
                                          alphabet_size=alphabet_size,
                                          seed=seed, restricted=restricted))
        teacher = SimulatedTeacher(target, stats)
        config = LearnConfig(timeout_s=timeout_s,
                             solver=SolverConfig(backend=backend))
        learn(teacher, config)
    except LearnTimeout:
        reason = "timeout"
    except WorkbenchError as exc:
        reason = type(exc).__name__
        stats.wall_ms = int((time.monotonic() - start) * 1000)
    row = {name: getattr(stats, name) for name in CSV_HEADER if name != "reason"}
    row["reason"] = reason
    return row


def _run_sample_args(args):
    return run_sample(*args)


def run_benchmark(config: BenchConfig) -> list[dict]:
    """Run the sweep; returns the rows and writes them as CSV if an
    output path is configured."""
    tasks = []
    for n_states in range(config.min_states, config.max_states + 1):
        for alphabet_size in range(config.min_alphabet, config.max_alphabet + 1):
            for index in range(config.samples):
                seed = derive_seed(config.seed, n_states, alphabet_size, index)
                tasks.append((n_states, alphabet_size, seed, config.restricted,
                              config.timeout_s, config.solver.backend))
    if config.jobs == 1:
        rows = [run_sample(*task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_run_sample_args, tasks))
    if config.out_path is not None:
        write_csv(rows, config.out_path)
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
