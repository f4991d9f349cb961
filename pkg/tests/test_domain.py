from datetime import timedelta
from fractions import Fraction

import pytest

from scrumsight import (
    AssignAction,
    CompleteAction,
    LikertScale,
    LikertValue,
    Task,
    TaskStatus,
    Team,
    likert5,
    likert11,
    transition_task,
)
from scrumsight.domain import elapsed_days
from scrumsight.errors import IllegalTransition, TimestampOrderViolation

from conftest import utc


class TestLikert:
    @pytest.mark.parametrize("value", [0, 5, 10])
    def test_eleven_scale_accepts_range(self, value):
        assert likert11(value).value == value

    @pytest.mark.parametrize("value", [-1, 11])
    def test_eleven_scale_rejects_out_of_range(self, value):
        with pytest.raises(ValueError):
            likert11(value)

    @pytest.mark.parametrize("value", [0, 6])
    def test_five_scale_rejects_out_of_range(self, value):
        with pytest.raises(ValueError):
            likert5(value)

    def test_five_scale_bounds(self):
        assert likert5(1).value == 1
        assert likert5(5).scale is LikertScale.FIVE

    def test_rejects_non_integers(self):
        with pytest.raises(ValueError):
            LikertValue(3.5, LikertScale.ELEVEN)


class TestTeam:
    def test_product_owner_must_belong(self):
        with pytest.raises(ValueError):
            Team(id="t", name="T", members=frozenset({"a"}), product_owner="z")

    def test_stakeholder_product_owner_allowed(self):
        team = Team(
            id="t", name="T", members=frozenset({"a"}),
            product_owner="s", stakeholders=frozenset({"s"}),
        )
        assert team.product_owner == "s"

    def test_members_nonempty(self):
        with pytest.raises(ValueError):
            Team(id="t", name="T", members=frozenset(), product_owner="a")


def proposed_task(**overrides) -> Task:
    base = dict(
        id="k1",
        team="t1",
        proposer="p1",
        description="work",
        difficulty_estimates={"p1": likert11(5)},
        time_estimates_days={"p1": Fraction(2)},
    )
    base.update(overrides)
    return Task(**base)


class TestTaskLifecycle:
    def test_assign_moves_to_assigned(self):
        task = transition_task(proposed_task(), AssignAction("p1", 3, utc(5)))
        assert task.status is TaskStatus.ASSIGNED
        assert task.assignee == "p1"
        assert task.sprint_assigned == 3
        assert task.assigned_at == utc(5)

    def test_complete_records_elapsed_days(self):
        task = transition_task(proposed_task(), AssignAction("p1", 1, utc(5)))
        done = transition_task(task, CompleteAction(utc(7)))
        assert done.status is TaskStatus.COMPLETED
        assert done.completed_at - done.assigned_at == timedelta(days=2)

    def test_assign_on_completed_is_illegal(self):
        task = transition_task(proposed_task(), AssignAction("p1", 1, utc(5)))
        done = transition_task(task, CompleteAction(utc(6)))
        with pytest.raises(IllegalTransition):
            transition_task(done, AssignAction("p2", 2, utc(7)))

    def test_complete_on_proposed_is_illegal(self):
        with pytest.raises(IllegalTransition):
            transition_task(proposed_task(), CompleteAction(utc(6)))

    def test_reassignment_is_forbidden(self):
        task = transition_task(proposed_task(), AssignAction("p1", 1, utc(5)))
        with pytest.raises(IllegalTransition):
            transition_task(task, AssignAction("p2", 1, utc(6)))

    def test_completion_before_assignment_rejected(self):
        task = transition_task(proposed_task(), AssignAction("p1", 1, utc(5)))
        with pytest.raises(TimestampOrderViolation):
            transition_task(task, CompleteAction(utc(4)))

    def test_assign_requires_time_estimate(self):
        task = proposed_task(time_estimates_days={})
        with pytest.raises(IllegalTransition):
            transition_task(task, AssignAction("p1", 1, utc(5)))

    def test_assign_requires_difficulty_estimate(self):
        task = proposed_task(difficulty_estimates={})
        with pytest.raises(IllegalTransition):
            transition_task(task, AssignAction("p1", 1, utc(5)))


class TestTaskInvariants:
    def test_proposed_cannot_carry_assignment(self):
        with pytest.raises(ValueError):
            proposed_task(assignee="p1")

    def test_assignee_not_collaborator(self):
        with pytest.raises(ValueError):
            proposed_task(
                status=TaskStatus.ASSIGNED,
                assignee="p1",
                assigned_at=utc(5),
                collaborators=frozenset({"p1"}),
            )

    def test_confidence_requires_assignment(self):
        with pytest.raises(ValueError):
            proposed_task(confidence=likert11(7))


def test_elapsed_days_is_exact():
    assert elapsed_days(utc(5), utc(7, 21)) == Fraction(5, 2)
