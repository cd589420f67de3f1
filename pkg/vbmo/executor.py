# Copyright (C) 2024, VBMO contributors

# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA  02110-1301, USA.

from typing import Any
from collections.abc import Callable, Iterable

from concurrent.futures import ThreadPoolExecutor, Future
from concurrent.futures import wait as wait_futures


class TrialExecutor(ThreadPoolExecutor):
    """Thread pool that remembers every future it hands out."""

    def __init__(self, max_workers: int | None = None) -> None:
        # 0 means let the pool decide
        super().__init__(max_workers or None)
        self.futures: list[Future[Any]] = []

    def submit(self, fn: Callable[..., Any], /,
               *args: Any, **kwargs: Any) -> Future[Any]:
        future = super().submit(fn, *args, **kwargs)
        self.futures.append(future)
        return future

    def run_all(self, fn: Callable[..., Any],
                items: Iterable[Any]) -> list[Any]:
        """Call `fn` on every item and return results in input order."""
        futures = [self.submit(fn, item) for item in items]
        return [future.result() for future in futures]

    def raise_exceptions(self, timeout: float | None = None) -> None:
        done, not_done = wait_futures(self.futures, timeout)

        for future in done:
            future.result()


def run_ordered(fn: Callable[..., Any], items: Iterable[Any],
                executor: TrialExecutor | None = None) -> list[Any]:
    """Map `fn` over items, on the executor when one is given."""
    if executor is None:
        return [fn(item) for item in items]
    return executor.run_all(fn, items)
