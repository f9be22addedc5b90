"""Machine-readable command reports."""

import json
from dataclasses import asdict, dataclass, field

from .. import __version__


@dataclass
class Report:
    command: str
    ok: bool = True
    result: dict = field(default_factory=dict)
    error: dict = None
    exit_code: int = 0
    timing: float = 0.0
    engine_version: str = __version__

    def to_dict(self, timing=True):
        d = asdict(self)
        if not timing:
            d.pop("timing")
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def render_text(self):
        """Short human-readable rendering."""
        lines = [f"> {self.command}"]
        if not self.ok:
            lines.append(f"error [{self.error['type']}]: {self.error['message']}")
            return "\n".join(lines)
        for key, value in self.result.items():
            if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
                lines.append(f"{key}:")
                lines.extend(f"  {v}" for v in value)
            elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
                lines.append(f"{key}:")
                lines.extend(f"  - {_brief(v)}" for v in value)
            else:
                lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
        return "\n".join(lines)


def _brief(d):
    if "gauge" in d and "basis" in d:
        return f"gauge {tuple(d['gauge'])}: " + "; ".join(d["basis"])
    return json.dumps(d, ensure_ascii=False)


def dump_reports(reports, timing=True):
    """JSON array of reports, one per line, UTF-8 with LF endings."""
    body = ",\n".join("  " + r.to_json(timing) for r in reports)
    return "[\n" + body + "\n]\n" if reports else "[]\n"


def load_reports(text):
    return [Report.from_dict(d) for d in json.loads(text)]
