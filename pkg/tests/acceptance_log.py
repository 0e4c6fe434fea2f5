"""Shared verdict table filled by the acceptance tests."""

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, checks: dict[str, bool], detail: str = "") -> bool:
    """Store the verdict of criterion ``n``; the failing check names go in the detail."""
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    text = detail if ok else f"failed: {', '.join(failed)}; {detail}"
    RESULTS[n] = (ok, text)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
    return ok
