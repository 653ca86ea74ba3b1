"""Exception types shared across the package."""


class ScenarioError(ValueError):
    """Parameters violate the constraints of an [n; |alpha|, |beta|] scenario."""


class ResourceLimitError(RuntimeError):
    """A problem size exceeds a configured enumeration or memory guard."""


class PostconditionError(RuntimeError):
    """A numerical result failed a check that should hold by construction."""
