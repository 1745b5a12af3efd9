import os
import warnings
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# should not fail if '.env' doesn't exist, we just fall back on user env vars
env_path = Path(__file__).resolve().parent.parent / ".env"
load_dotenv(env_path, override=False)


class Environment:
    """Runtime settings read from the project root '.env' file or env vars"""

    THREADS_VARIABLE = "GFCLT_THREADS"

    @property
    def thread_cap(self) -> Optional[int]:
        value = os.environ.get(self.THREADS_VARIABLE)
        if value is None:
            return None

        try:
            cap = int(value)
        except ValueError:
            warnings.warn(f"Ignoring {self.THREADS_VARIABLE}={value!r}, expected a positive integer")
            return None

        if cap < 1:
            warnings.warn(f"Ignoring {self.THREADS_VARIABLE}={value!r}, expected a positive integer")
            return None
        return cap

    def threads(self, requested: Optional[int] = None) -> int:
        """Number of worker threads to use, honouring GFCLT_THREADS as an upper bound"""
        available = os.cpu_count() or 1
        n = requested if requested is not None else available
        cap = self.thread_cap
        if cap is not None:
            n = min(n, cap)
        return max(1, n)
