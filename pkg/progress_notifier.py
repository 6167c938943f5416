"""
Progress Tracking
tqdm progress bars for the exhaustive oracles and the repro catalogue.
"""

import logging
from datetime import datetime
from typing import Dict, List, Optional

from tqdm import tqdm

logger = logging.getLogger(__name__)


class ProgressTracker:
    """
    Progress bar over a known number of work units.

    A disabled tracker keeps the same interface and draws nothing, so oracles
    can update it unconditionally.
    """

    def __init__(self, total_steps: int = 100, desc: str = "Processing", enabled: bool = True):
        self.total_steps = total_steps
        self.desc = desc
        self.enabled = enabled
        self.pbar: Optional[tqdm] = None
        self.current_step = 0
        self.start_time: Optional[datetime] = None
        self.phase_times: Dict[str, List[datetime]] = {}

    def start(self) -> "ProgressTracker":
        """Start the progress bar."""
        self.start_time = datetime.now()
        if self.enabled:
            self.pbar = tqdm(
                total=self.total_steps,
                desc=self.desc,
                unit="step",
                bar_format='{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}, {rate_fmt}]',
                colour='green',
                ncols=100,
                leave=False,
            )
        logger.debug(f"Progress tracking started: {self.desc} ({self.total_steps:,} steps)")
        return self

    def update(self, steps: int = 1, description: Optional[str] = None):
        self.current_step += steps
        if self.pbar:
            self.pbar.update(steps)
            if description:
                self.pbar.set_description(description)

    def set_phase(self, phase_name: str, steps: int = 0):
        """Record a named phase, e.g. one trellis depth."""
        self.phase_times.setdefault(phase_name, []).append(datetime.now())
        if self.pbar:
            self.pbar.set_description(phase_name)
        if steps:
            self.update(steps)

    def complete(self, message: Optional[str] = None):
        if self.pbar:
            self.pbar.n = self.total_steps
            self.pbar.refresh()
            if message:
                self.pbar.set_description(message)
            self.pbar.close()
            self.pbar = None

        if self.start_time:
            elapsed = (datetime.now() - self.start_time).total_seconds()
            logger.debug(f"{self.desc} completed in {elapsed:.1f}s")

    def close(self):
        if self.pbar:
            self.pbar.close()
            self.pbar = None

    def __enter__(self) -> "ProgressTracker":
        return self.start()

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.complete()
        else:
            self.close()
        return False
