"""
Share Storage
Directory-based persistence of dealt shares, one text file per (participant, set id)
"""

import logging
import os
import re
import threading
from pathlib import Path
from typing import Iterable, List, Optional

from file_formats import format_share, load, parse_share
from gds_errors import InputError, ParseError
from secret_sharing import ShareBundle

logger = logging.getLogger(__name__)

SHARE_SUFFIX = '.share'


def _safe(token: str) -> str:
    return re.sub(r'[^A-Za-z0-9_.-]', '_', token)


class ShareStorage:
    """Reads and writes the share files of one dealing"""

    def __init__(self, directory: str):
        """
        Initialize share storage

        Args:
            directory: Directory holding the share files (created on first write)
        """
        self.directory = Path(directory)
        self._lock = threading.Lock()

    def path_for(self, participant: str, set_id: str) -> Path:
        return self.directory / f"{_safe(set_id)}__{_safe(participant)}{SHARE_SUFFIX}"

    def _write_atomic(self, path: Path, content: str):
        # temp file first, then rename
        temp_file = f"{path}.tmp"
        with open(temp_file, 'w') as f:
            f.write(content)
        os.replace(temp_file, path)

    def save_bundle(self, bundle: ShareBundle) -> List[Path]:
        """
        Write every piece of the bundle

        Returns:
            Paths written, sorted
        """
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            written = []
            for (participant, set_id), cells in sorted(bundle.pieces.items()):
                path = self.path_for(participant, set_id)
                self._write_atomic(path, format_share(bundle.n, set_id, participant, cells))
                written.append(path)
            logger.info(f"Wrote {len(written)} share files to {self.directory}")
            return written

    def share_files(self) -> List[Path]:
        if not self.directory.is_dir():
            raise ParseError("share directory does not exist", str(self.directory))
        return sorted(self.directory.glob(f"*{SHARE_SUFFIX}"))

    def load_bundle(self, paths: Optional[Iterable[str]] = None) -> ShareBundle:
        """
        Read share files back into a bundle

        Args:
            paths: Specific files; every share file in the directory when omitted

        Returns:
            ShareBundle
        """
        files = [Path(p) for p in paths] if paths is not None else self.share_files()
        if not files:
            raise InputError("no share files given")
        with self._lock:
            bundle: Optional[ShareBundle] = None
            for path in files:
                n, set_id, participant, cells = load(parse_share, str(path))
                if bundle is None:
                    bundle = ShareBundle(n=n)
                elif bundle.n != n:
                    raise ParseError(f"share is for order {n}, earlier shares are for order {bundle.n}", str(path))
                if (participant, set_id) in bundle.pieces:
                    raise ParseError(f"second share for participant '{participant}' in set '{set_id}'", str(path))
                bundle.pieces[(participant, set_id)] = cells
            logger.debug(f"Loaded {len(files)} share files")
            return bundle
