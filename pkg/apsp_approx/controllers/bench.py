"""
Benchmark Controller

Available Commands (1 total):
1. bench_oracles - Time oracle preprocessing on sparse (m ≈ 3n) weighted graphs

Timings are reported, never gated.
"""

import logging
import time
from typing import Any, Dict, List

from pydantic import BaseModel, Field, field_validator

from ..graph import gen_gnp
from ..models import Command, RunReport
from ..weighted import build_oracle_2, build_oracle_2W

logger = logging.getLogger(__name__)


class BenchArgs(BaseModel):
    sizes: str = "500,1000,2000"
    wmax: int = Field(default=100, ge=1)
    seed: int = 0

    @field_validator("sizes")
    @classmethod
    def sizes_positive(cls, sizes: str) -> str:
        values = [int(x) for x in sizes.split(",") if x.strip()]
        if not values or min(values) < 2:
            raise ValueError(f"sizes must be a comma list of integers >= 2, got {sizes!r}")
        return sizes

    @property
    def size_list(self) -> List[int]:
        return [int(x) for x in self.sizes.split(",") if x.strip()]


class BenchController:
    """Controller for preprocessing benchmarks"""

    def get_commands(self) -> List[Command]:
        """Return list of benchmark commands"""
        return [
            Command(
                name="bench_oracles",
                description="Report oracle preprocessing time and table sizes for growing n",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "sizes": {"type": "string", "flags": ["--sizes"], "default": "500,1000,2000", "description": "Comma-separated vertex counts"},
                        "wmax": {"type": "integer", "flags": ["--wmax"], "default": 100, "description": "Largest edge weight"},
                        "seed": {"type": "integer", "flags": ["--seed"], "default": 0, "description": "PCG64 seed"},
                    },
                    "required": [],
                },
            )
        ]

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle benchmark commands"""
        if name == "bench_oracles":
            args = BenchArgs.model_validate(arguments)
            phases: Dict[str, float] = {}
            sizes: Dict[str, int] = {}
            for n in args.size_list:
                g = gen_gnp(n, min(1.0, 6.0 / (n - 1)), args.wmax, args.seed)
                for label, build in (("oracle2", build_oracle_2), ("oracle2w", build_oracle_2W)):
                    started = time.perf_counter()
                    oracle = build(g, None, args.seed)
                    phases[f"{label}.n{n}"] = time.perf_counter() - started
                    sizes[f"{label}.n{n}.words"] = oracle.size_words
                sizes[f"m.n{n}"] = g.m
                logger.info(f"bench n={n} m={g.m}: oracle2 {phases[f'oracle2.n{n}']:.3f}s, oracle2w {phases[f'oracle2w.n{n}']:.3f}s")
            report = RunReport(algorithm="bench", seed=args.seed, phases=phases, sizes=sizes)
            return {"report": report, "exit_code": 0}

        else:
            return {"error": f"Unknown bench command: {name}"}
