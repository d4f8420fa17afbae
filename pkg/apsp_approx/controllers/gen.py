"""
Graph Generation Controller

Available Commands (1 total):
1. gen_graph - Write a seeded G(n, p) graph in the "n m" / "u v w" text format
"""

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..graph import format_graph, gen_gnp, write_graph
from ..models import Command

logger = logging.getLogger(__name__)


class GenArgs(BaseModel):
    n: int = Field(ge=1)
    p_edge: float = Field(ge=0.0, le=1.0)
    wmax: int = Field(default=1, ge=1)
    seed: int = 0
    output: Optional[str] = None


class GenController:
    """Controller for graph corpus generation"""

    def get_commands(self) -> List[Command]:
        """Return list of generation commands"""
        return [
            Command(
                name="gen_graph",
                description="Generate a seeded Erdos-Renyi graph with uniform integer weights",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "n": {"type": "integer", "flags": ["-n"], "description": "Vertex count (>= 1)"},
                        "p_edge": {"type": "number", "flags": ["-p", "--p-edge"], "description": "Edge probability in [0, 1]"},
                        "wmax": {"type": "integer", "flags": ["-w", "--wmax"], "default": 1, "description": "Largest edge weight"},
                        "seed": {"type": "integer", "flags": ["-s", "--seed"], "default": 0, "description": "PCG64 seed"},
                        "output": {"type": "string", "flags": ["-o", "--output"], "description": "Graph file (stdout when omitted)"},
                    },
                    "required": ["n", "p_edge"],
                },
            )
        ]

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle generation commands"""
        if name == "gen_graph":
            args = GenArgs.model_validate(arguments)
            g = gen_gnp(args.n, args.p_edge, args.wmax, args.seed)
            result = {"command": "gen", "n": g.n, "m": g.m, "seed": args.seed, "status": "success"}
            if args.output:
                write_graph(g, args.output)
                result["output"] = args.output
            else:
                result["text"] = format_graph(g)
            logger.info(f"Generated G({args.n}, {args.p_edge}) with m={g.m}, wmax={args.wmax}, seed={args.seed}")
            return result

        else:
            return {"error": f"Unknown gen command: {name}"}
