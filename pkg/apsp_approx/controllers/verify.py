"""
Verification Controller

Available Commands (1 total):
1. verify_stretch - Audit an estimate matrix against an exact matrix for a (mult, add) contract
"""

import logging
import time
from fractions import Fraction
from typing import Any, Dict, List

from pydantic import BaseModel, Field, field_validator

from ..graph import read_matrix
from ..models import Command, RunReport
from ..verify import audit_stretch

logger = logging.getLogger(__name__)


class VerifyArgs(BaseModel):
    exact: str
    estimate: str
    mult: str = "1"
    add: int = Field(default=0, ge=0)

    @field_validator("mult")
    @classmethod
    def mult_at_least_one(cls, mult: str) -> str:
        if Fraction(mult) < 1:
            raise ValueError(f"mult must be >= 1, got {mult}")
        return mult


class VerifyController:
    """Controller for exact-oracle stretch audits"""

    def get_commands(self) -> List[Command]:
        """Return list of verification commands"""
        return [
            Command(
                name="verify_stretch",
                description="Count pairs violating d <= estimate <= mult * d + add",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "exact": {"type": "string", "positional": True, "description": "Exact distance matrix"},
                        "estimate": {"type": "string", "positional": True, "description": "Estimate matrix"},
                        "mult": {"type": "string", "flags": ["--mult"], "default": "1", "description": "Multiplicative stretch"},
                        "add": {"type": "integer", "flags": ["--add"], "default": 0, "description": "Additive stretch"},
                    },
                    "required": ["exact", "estimate"],
                },
            )
        ]

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle verification commands"""
        if name == "verify_stretch":
            args = VerifyArgs.model_validate(arguments)
            started = time.perf_counter()
            exact = read_matrix(args.exact)
            estimate = read_matrix(args.estimate)
            audit = audit_stretch(exact, estimate, Fraction(args.mult), args.add)
            report = RunReport(
                algorithm="verify",
                n=exact.n,
                contract=f"({Fraction(args.mult)}, {args.add})",
                phases={"audit": time.perf_counter() - started},
                audit=audit,
                status="success" if audit.passed else "violation",
            )
            logger.info(f"verify: {audit.violations} violations over {audit.pairs} pairs")
            return {"report": report, "exit_code": 0 if audit.passed else 1}

        else:
            return {"error": f"Unknown verify command: {name}"}
