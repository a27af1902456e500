"""Exception hierarchy shared by all modules."""


class CDCError(Exception):
    pass


class GraphError(CDCError, ValueError):
    """Unknown ids, malformed walks or inconsistent inputs."""


class PreconditionError(CDCError, ValueError):
    """An operation was called outside its documented domain."""


class BridgeError(PreconditionError):
    def __init__(self, bridges):
        self.bridges = tuple(sorted(bridges))
        super().__init__(f"graph has bridges: {list(self.bridges)}")


class SpliceError(CDCError):
    """Path pasting could not be carried out (wrong pendant coverage)."""
