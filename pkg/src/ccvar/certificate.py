"""Verification certificates: which equations were checked, on how many
instances, and the witnesses of any failure."""

from dataclasses import dataclass, field


@dataclass
class Check:
    tag: str
    instances: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        return self.failed == 0

    def to_json(self):
        return {
            "tag": self.tag,
            "instances": self.instances,
            "failed": self.failed,
            "status": "pass" if self.passed else "fail",
            "witnesses": [_plain(w) for w in self.witnesses],
        }


class Certificate:
    """Accumulates checks in insertion order.

    ``max_witnesses`` caps how many failing instances are kept per tag; the
    instance count is always exact.
    """

    def __init__(self, subject="", max_witnesses=5):
        self.subject = subject
        self.max_witnesses = max_witnesses
        self._checks = {}

    def check(self, tag):
        if tag not in self._checks:
            self._checks[tag] = Check(tag)
        return self._checks[tag]

    def record(self, tag, ok, witness=None):
        """``witness`` may be a zero-argument callable, evaluated only on failure."""
        c = self.check(tag)
        c.instances += 1
        if not ok:
            c.failed += 1
        if not ok and len(c.witnesses) < self.max_witnesses:
            c.witnesses.append(witness() if callable(witness) else witness)
        return ok

    def tally(self, tag, count, failures=()):
        """Bulk form of :meth:`record` for vectorised checks."""
        c = self.check(tag)
        failures = list(failures)
        c.instances += count
        c.failed += len(failures)
        for w in failures:
            if len(c.witnesses) >= self.max_witnesses:
                break
            c.witnesses.append(w)

    def merge(self, other, prefix=""):
        for c in other.checks:
            mine = self.check(prefix + c.tag)
            mine.instances += c.instances
            mine.failed += c.failed
            room = self.max_witnesses - len(mine.witnesses)
            mine.witnesses.extend(c.witnesses[:max(room, 0)])
        return self

    @property
    def checks(self):
        return list(self._checks.values())

    @property
    def passed(self):
        return all(c.passed for c in self._checks.values())

    @property
    def failures(self):
        return [c for c in self._checks.values() if not c.passed]

    def to_json(self):
        return {
            "subject": self.subject,
            "checked": [c.to_json() for c in self.checks],
            "failures": [c.tag for c in self.failures],
            "witnesses": [{"tag": c.tag, "witness": _plain(c.witnesses[0]) if c.witnesses else None}
                          for c in self.failures],
        }

    def __repr__(self):
        state = "pass" if self.passed else f"fail {[c.tag for c in self.failures]}"
        return f"<Certificate {self.subject!r} {len(self._checks)} checks {state}>"


def _plain(x):
    """Make a witness JSON-friendly (tuples -> lists, sets -> sorted lists)."""
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)
