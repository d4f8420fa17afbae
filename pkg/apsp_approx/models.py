"""Structured records shared by the command controllers and the CLI."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .verify import StretchAudit


class Command(BaseModel):
    """One harness command: name, help text and a JSON-schema-like argument description.

    Each property may carry a "flags" list (option strings) or "positional": true,
    which the CLI turns into argparse arguments.
    """

    name: str
    description: str
    inputSchema: Dict[str, Any]


class RunReport(BaseModel):
    algorithm: str
    status: str = "success"
    n: Optional[int] = None
    m: Optional[int] = None
    r: Optional[float] = None
    p: Optional[float] = None
    eps: Optional[str] = None
    k: Optional[int] = None
    seed: Optional[int] = None
    contract: Optional[str] = None
    phases: Dict[str, float] = Field(default_factory=dict)
    sizes: Dict[str, int] = Field(default_factory=dict)
    audit: Optional[StretchAudit] = None
    output: Optional[str] = None

    def to_record(self) -> str:
        """One key=value line per field; nested maps use dotted keys"""
        lines = []
        for key, value in self.model_dump(exclude_none=True).items():
            if isinstance(value, dict):
                for sub, item in value.items():
                    if item is None:
                        continue
                    lines.append(f"{key}.{sub}={_encode(item)}")
            else:
                lines.append(f"{key}={_encode(value)}")
        return "\n".join(lines)

    @classmethod
    def from_record(cls, text: str) -> "RunReport":
        data: Dict[str, Any] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or "=" not in line:
                continue
            key, value = line.split("=", 1)
            if "." in key:
                head, sub = key.split(".", 1)
                data.setdefault(head, {})[sub] = value
            else:
                data[key] = value
        audit = data.get("audit")
        if audit and "first_violation" in audit:
            audit["first_violation"] = [int(x) for x in audit["first_violation"].split(",")]
        return cls.model_validate(data)


def _encode(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(x) for x in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def flat_record(result: Dict[str, Any]) -> List[str]:
    """key=value lines for a plain result dict"""
    lines = []
    for key, value in result.items():
        if isinstance(value, dict):
            lines.extend(f"{key}.{sub}={_encode(item)}" for sub, item in value.items())
        else:
            lines.append(f"{key}={_encode(value)}")
    return lines
