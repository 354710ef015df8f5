import sys
from pathlib import Path

from hypothesis import settings

# Shared strategies live in sibling test modules.
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")
