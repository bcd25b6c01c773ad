import enum


class ResourceKind(str, enum.Enum):
    """The three two-mode entanglement resources."""

    STANDARD = "standard"
    SUBTRACTED = "subtracted"
    ADDED = "added"

    @property
    def offset(self):
        """Fock offset of the Schmidt kets, |n+offset, n+offset>."""
        return 1 if self is ResourceKind.ADDED else 0

    @property
    def conditioned(self):
        return self is not ResourceKind.STANDARD

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "std": cls.STANDARD,
            "ps": cls.SUBTRACTED,
            "photon-subtracted": cls.SUBTRACTED,
            "pa": cls.ADDED,
            "photon-added": cls.ADDED,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)
