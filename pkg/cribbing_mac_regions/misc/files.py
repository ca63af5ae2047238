import os
import tempfile
from pathlib import Path
from typing import Final, Optional, Union

__all__ = [
    "FileResource",
]


class FileResource:
    """An input or output file of a command, which may or may not be specified and may or may not exist.

    Attributes:
        path ([Path|None]) : The path to the file. Can be None.
        was_specified (Final[bool]) : Whether the path was specified at initialization.
        was_present (Final[bool]) : Whether the file existed at initialization.
        is_specified (bool, @property) : Whether the path is specified.
        is_present (bool, @property) : Whether the file exists now.
    """
    path: Optional[Path]
    was_specified: Final[bool]
    was_present: Final[bool]

    _ENCODING: Final[str] = "utf-8"

    def __init__(self, path: Optional[Union[str, Path]]):
        self.path = Path(path) if path else None
        self.was_specified = self.path is not None
        self.was_present = self.was_specified and self.path.is_file()

    @property
    def is_specified(self) -> bool:
        return self.path is not None

    @property
    def is_present(self) -> bool:
        return self.path is not None and self.path.is_file()

    def sibling(self, suffix: str) -> "FileResource":
        """The file next to this one whose name has ``suffix`` appended, e.g. ``.manifest.json``."""
        self._require_path()
        return FileResource(self.path.with_name(self.path.name + suffix))

    def read_text(self) -> str:
        self._require_path()
        return self.path.read_text(encoding=self._ENCODING)

    def write_text(self, text: str):
        """Writes through a temporary file in the target directory, then moves it into place.

        A failure leaves any previous file untouched and no partial file behind.
        """
        self._require_path()
        directory = self.path.parent
        if not directory.is_dir():
            raise FileNotFoundError(f"The directory {str(directory)!r} does not exist.")
        fd, temp_name = tempfile.mkstemp(prefix=f".{self.path.name}.", suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding=self._ENCODING, newline="") as f:
                f.write(text)
            os.replace(temp_name, self.path)
        except BaseException:
            Path(temp_name).unlink(missing_ok=True)
            raise

    def _require_path(self):
        if self.path is None:
            raise ValueError("The file resource has no path.")
