import os

from .errors import SizeLimit

DEFAULT_SIZE_CAP = 4096


def size_cap() -> int:
    """Largest carrier any construction may produce; ``KLEENE_SIZE_CAP`` overrides."""
    raw = os.environ.get("KLEENE_SIZE_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SizeLimit(f"KLEENE_SIZE_CAP is not an integer: {raw!r}") from None
    return DEFAULT_SIZE_CAP


def check_size(n: int, what: str, cap: int | None = None) -> None:
    cap = size_cap() if cap is None else cap
    if n > cap:
        raise SizeLimit(f"{what} would have {n} elements (cap {cap})")
