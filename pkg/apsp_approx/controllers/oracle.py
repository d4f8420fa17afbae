"""
Distance Oracle Controller

Available Commands (2 total):
1. oracle_build - Build a (2, 0) or (2, W) oracle and persist it as a versioned blob
2. oracle_query - Answer one query from a blob with its candidate breakdown
"""

import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..graph import load_graph
from ..models import Command, RunReport
from ..weighted import KIND_TWO, KIND_TWO_W, build_oracle_2, build_oracle_2W, load_oracle, save_oracle

logger = logging.getLogger(__name__)


class BuildArgs(BaseModel):
    kind: str = KIND_TWO
    graph: str
    output: str
    p: Optional[float] = Field(default=None, gt=0.0, le=1.0)
    seed: int = 0
    space: bool = False


class QueryArgs(BaseModel):
    blob: str
    u: int
    v: int


class OracleController:
    """Controller for oracle persistence and queries"""

    def get_commands(self) -> List[Command]:
        """Return list of oracle commands"""
        return [
            Command(
                name="oracle_build",
                description="Preprocess a graph into a constant-time distance oracle blob",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "graph": {"type": "string", "positional": True, "description": "Graph file"},
                        "kind": {"type": "string", "flags": ["--kind"], "enum": [KIND_TWO, KIND_TWO_W], "default": KIND_TWO, "description": "two = (2, 0) oracle, two-w = (2, W) oracle"},
                        "output": {"type": "string", "flags": ["-o", "--output"], "description": "Blob file"},
                        "p": {"type": "number", "flags": ["--p"], "description": "Pivot sampling rate (default per kind)"},
                        "seed": {"type": "integer", "flags": ["--seed"], "default": 0, "description": "PCG64 seed"},
                        "space": {"type": "boolean", "flags": ["--space"], "description": "two-w only: p = n^(-1/3)"},
                    },
                    "required": ["graph", "output"],
                },
            ),
            Command(
                name="oracle_query",
                description="Query a persisted oracle",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "blob": {"type": "string", "positional": True, "description": "Blob file"},
                        "u": {"type": "integer", "positional": True, "description": "First vertex"},
                        "v": {"type": "integer", "positional": True, "description": "Second vertex"},
                    },
                    "required": ["blob", "u", "v"],
                },
            ),
        ]

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle oracle commands"""
        if name == "oracle_build":
            args = BuildArgs.model_validate(arguments)
            if args.kind not in (KIND_TWO, KIND_TWO_W):
                return {"error": f"Unknown oracle kind: {args.kind}", "exit_code": 2}
            started = time.perf_counter()
            g = load_graph(args.graph)
            load_time = time.perf_counter() - started

            started = time.perf_counter()
            if args.kind == KIND_TWO:
                oracle = build_oracle_2(g, args.p, args.seed)
            else:
                oracle = build_oracle_2W(g, args.p, args.seed, space=args.space)
            build_time = time.perf_counter() - started

            save_oracle(oracle, args.output)
            report = RunReport(
                algorithm=f"oracle-{args.kind}",
                n=g.n,
                m=g.m,
                p=oracle.bs.p,
                seed=args.seed,
                contract=oracle.guarantee,
                phases={"load": load_time, "build": build_time},
                sizes={
                    "pivots": len(oracle.bs.S),
                    "pivot_row_entries": int(oracle.delta_s.size),
                    "table_pairs": len(oracle.table),
                    "max_bunch": oracle.bs.max_bunch,
                    "max_cluster": oracle.bs.max_cluster,
                    "blob_bytes": Path(args.output).stat().st_size,
                },
                output=args.output,
            )
            return {"report": report, "exit_code": 0}

        elif name == "oracle_query":
            args = QueryArgs.model_validate(arguments)
            oracle = load_oracle(args.blob)
            before = oracle.probes
            candidates = oracle.explain(args.u, args.v)
            estimate = candidates.pop("estimate")
            return {
                "estimate": estimate,
                "candidates": candidates,
                "probes": oracle.probes - before,
                "kind": oracle.kind,
                "exit_code": 0,
            }

        else:
            return {"error": f"Unknown oracle command: {name}"}
