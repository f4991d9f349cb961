from datetime import datetime, timedelta, timezone

import pytest

from scrumsight import GeneratorConfig, generate, replay


def utc(day: int, hour: int = 9, minute: int = 0) -> datetime:
    return datetime(2026, 1, day, hour, minute, tzinfo=timezone.utc)


@pytest.fixture(scope="session")
def small_world():
    """Replayed synthetic world: 2 teams x 5 members x 4 sprints."""
    events = generate(GeneratorConfig(teams=2, members_per_team=5, sprints=4, seed=42))
    return replay(events)
