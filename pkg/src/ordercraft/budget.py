"""Budget defaults, overridable through the OC_BUDGET environment variable."""

import os

ENUM_BUDGET = 10 ** 6     # produced elements (downset enumeration and closures)
SEARCH_BUDGET = 10 ** 7   # visited nodes (isomorphism / embedding / subset search)


def resolve(explicit, default):
    """Pick the budget for one operation.

    Explicit arguments win; otherwise OC_BUDGET (when set and parseable)
    overrides the module default.
    """
    if explicit is not None:
        return explicit
    raw = os.environ.get("OC_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default
