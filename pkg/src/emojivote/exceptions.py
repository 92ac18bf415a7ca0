"""Exception hierarchy shared across the package."""


class DataError(ValueError):
    """Bad user-supplied data: malformed files, out-of-range labels, size mismatches."""


class ArchiveError(Exception):
    """Base for model-archive problems."""


class ArchiveVersionError(ArchiveError):
    """Archive written by an unrecognized format version."""


class ArchiveTruncatedError(ArchiveError):
    """Archive ends before all declared sections are present."""


class ArchiveChecksumError(ArchiveError):
    """Archive payload does not match its trailing checksum."""
