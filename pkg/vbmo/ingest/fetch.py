"""
Download the public benchmark data sets.
"""

from __future__ import annotations

import gzip
import shutil
import logging
import zipfile
import tempfile
from pathlib import Path

import requests

from ..exceptions import FetchError

logger = logging.getLogger(__name__)

DIMACS_URL = "http://www.diag.uniroma1.it/~challenge9/data"
DAO_URL = "https://movingai.com/benchmarks/dao/dao-map.zip"

DATASETS = {
    'ny': [
        f"{DIMACS_URL}/USA-road-d/USA-road-d.NY.gr.gz",
        f"{DIMACS_URL}/USA-road-t/USA-road-t.NY.gr.gz",
        f"{DIMACS_URL}/USA-road-d/USA-road-d.NY.co.gz",
    ],
    'dao': [DAO_URL],
}

CHUNK_SIZE = 1024 * 64
TIMEOUT = 30


def _download(url: str, path: Path) -> None:
    """Stream `url` into `path`."""
    logger.info(f"Downloading {url}")

    try:
        with requests.get(url, stream=True, timeout=TIMEOUT) as response:
            response.raise_for_status()

            with path.open('wb') as f:
                for chunk in response.iter_content(chunk_size=CHUNK_SIZE):
                    f.write(chunk)
    except requests.RequestException as e:
        raise FetchError(f"could not download {url}: {e}") from e


def _unpack(archive: Path, dest: Path) -> list[Path]:
    if archive.suffix == '.gz':
        target = dest / archive.stem

        with gzip.open(archive, 'rb') as src, target.open('wb') as out:
            shutil.copyfileobj(src, out)
        return [target]

    if archive.suffix == '.zip':
        with zipfile.ZipFile(archive) as zf:
            members = [m for m in zf.namelist() if m.endswith('.map')]
            written = []

            for member in members:
                target = dest / Path(member).name
                with zf.open(member) as src, target.open('wb') as out:
                    shutil.copyfileobj(src, out)
                written.append(target)
        return written

    target = dest / archive.name
    shutil.move(archive, target)
    return [target]


def fetch_dataset(name: str, dest: Path) -> list[Path]:
    """Download and unpack `ny` or `dao` into `dest`."""
    urls = DATASETS.get(name)

    if urls is None:
        raise FetchError(f"unknown dataset {name!r}, "
                         f"choose from {sorted(DATASETS)}")

    dest.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    with tempfile.TemporaryDirectory() as tmp:
        for url in urls:
            archive = Path(tmp, url.rsplit('/', 1)[-1])
            _download(url, archive)

            try:
                written.extend(_unpack(archive, dest))
            except (OSError, zipfile.BadZipFile) as e:
                raise FetchError(f"could not unpack {archive.name}: {e}") \
                    from e

    logger.info(f"Wrote {len(written)} files to {dest}")
    return written
