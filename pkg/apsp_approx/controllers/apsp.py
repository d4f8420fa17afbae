"""
APSP Controller

Available Commands (1 total):
1. apsp_run - Run one approximate APSP algorithm on a graph file and write the estimate matrix

Algorithms: exact, two-approx, two-approx-comb, near-additive, dense-weighted, bk, additive.
"""

import logging
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from ..additive import additive_apsp_k
from ..bk import bk_apsp
from ..framework import near_additive_apsp, two_approx_apsp, two_approx_combinatorial
from ..graph import EstimateMatrix, Graph, exact_apsp, load_graph, write_matrix
from ..models import Command, RunReport
from ..verify import audit_stretch
from ..weighted import dense_apsp

logger = logging.getLogger(__name__)


class ApspArgs(BaseModel):
    algo: str
    graph: str
    output: Optional[str] = None
    format: str = "bin"
    r: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    p: Optional[float] = Field(default=None, gt=0.0, le=1.0)
    eps: Optional[str] = None
    k: Optional[int] = None
    seed: int = 0
    audit: bool = False

    @field_validator("eps")
    @classmethod
    def eps_rational(cls, eps: Optional[str]) -> Optional[str]:
        if eps is None:
            return eps
        value = Fraction(eps)
        if value < 0:
            raise ValueError(f"eps must be >= 0, got {eps}")
        return str(value)

    def eps_or(self, default: Fraction) -> Fraction:
        return default if self.eps is None else Fraction(self.eps)


def _run_exact(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return exact_apsp(g)


def _run_two_approx(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return two_approx_apsp(g, r=0.468 if a.r is None else a.r, seed=a.seed)


def _run_two_approx_comb(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return two_approx_combinatorial(g, seed=a.seed)


def _run_near_additive(g: Graph, a: ApspArgs) -> EstimateMatrix:
    r = 0.5 if a.r is None else a.r
    return near_additive_apsp(g, k=a.k or 2, eps=a.eps_or(Fraction(1, 10)), r=r, seed=a.seed)


def _run_dense(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return dense_apsp(g, p=a.p, eps=a.eps_or(Fraction(0)), seed=a.seed)


def _run_bk(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return bk_apsp(g, r=0.5 if a.r is None else a.r, eps=a.eps_or(Fraction(0)), seed=a.seed)


def _run_additive(g: Graph, a: ApspArgs) -> EstimateMatrix:
    return additive_apsp_k(g, a.k or 2)


ALGORITHMS: Dict[str, Callable[[Graph, ApspArgs], EstimateMatrix]] = {
    "exact": _run_exact,
    "two-approx": _run_two_approx,
    "two-approx-comb": _run_two_approx_comb,
    "near-additive": _run_near_additive,
    "dense-weighted": _run_dense,
    "bk": _run_bk,
    "additive": _run_additive,
}


class ApspController:
    """Controller for running APSP algorithms from graph files"""

    def get_commands(self) -> List[Command]:
        """Return list of APSP commands"""
        return [
            Command(
                name="apsp_run",
                description="Compute an estimate matrix with the chosen algorithm",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "graph": {"type": "string", "positional": True, "description": "Graph file"},
                        "algo": {"type": "string", "flags": ["--algo"], "enum": sorted(ALGORITHMS), "description": "Algorithm identifier"},
                        "output": {"type": "string", "flags": ["-o", "--output"], "description": "Estimate matrix file"},
                        "format": {"type": "string", "flags": ["--format"], "enum": ["bin", "text"], "default": "bin", "description": "Matrix encoding"},
                        "r": {"type": "number", "flags": ["--r"], "description": "Hierarchy / framework parameter in [0, 1]"},
                        "p": {"type": "number", "flags": ["--p"], "description": "Pivot sampling rate"},
                        "eps": {"type": "string", "flags": ["--eps"], "description": "Approximation slack, decimal or fraction"},
                        "k": {"type": "integer", "flags": ["--k"], "description": "Even additive stretch"},
                        "seed": {"type": "integer", "flags": ["--seed"], "default": 0, "description": "PCG64 seed"},
                        "audit": {"type": "boolean", "flags": ["--audit"], "description": "Audit the output against exact distances"},
                    },
                    "required": ["graph", "algo"],
                },
            )
        ]

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle APSP commands"""
        if name == "apsp_run":
            args = ApspArgs.model_validate(arguments)
            if args.algo not in ALGORITHMS:
                return {"error": f"Unknown algorithm: {args.algo}", "exit_code": 2}

            phases: Dict[str, float] = {}
            started = time.perf_counter()
            g = load_graph(args.graph)
            phases["load"] = time.perf_counter() - started

            started = time.perf_counter()
            estimate = ALGORITHMS[args.algo](g, args)
            phases["run"] = time.perf_counter() - started

            report = RunReport(
                algorithm=args.algo,
                n=g.n,
                m=g.m,
                r=args.r,
                p=args.p,
                eps=args.eps,
                k=args.k,
                seed=args.seed,
                contract=str(estimate.contract) if estimate.contract else None,
                sizes={"finite_entries": estimate.finite_count()},
            )
            if args.output:
                started = time.perf_counter()
                write_matrix(estimate, args.output, args.format)
                phases["write"] = time.perf_counter() - started
                report.output = args.output

            exit_code = 0
            if args.audit and estimate.contract is not None:
                started = time.perf_counter()
                report.audit = audit_stretch(exact_apsp(g), estimate, estimate.contract.mult, estimate.contract.add)
                phases["audit"] = time.perf_counter() - started
                if not report.audit.passed:
                    report.status = "violation"
                    exit_code = 1
            report.phases = phases
            logger.info(f"apsp --algo {args.algo}: n={g.n}, m={g.m}, {phases['run']:.3f}s")
            return {"report": report, "exit_code": exit_code}

        else:
            return {"error": f"Unknown apsp command: {name}"}
