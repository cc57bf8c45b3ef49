from typing import (
    Any,
    Callable,
    Generic,
    List,
    Optional,
    TypeVar
)

T = TypeVar("T")


def by(
    field: str,
    condition: Callable[[Any], bool]
) -> Callable[[T], bool]:
    def _by_condition(obj):
        return condition(getattr(obj, field))
    return _by_condition


def by_role(condition: Callable[[Any], bool]) -> Callable[[T], bool]:
    return by("role", condition)


class QueryMixin(Generic[T]):
    def list(
        self,
        condition: Callable[[T], bool] = None
    ) -> List[T]:
        all_items = self._list_all()

        if condition is None:
            return all_items
        return [item for item in all_items if condition(item)]

    def get(self, condition: Callable[[T], bool]) -> Optional[T]:
        for item in self._list_all():
            if condition(item):
                return item
        return None

    def lowest(
        self,
        key: Callable[[T], float],
        tolerance: float = 1e-10,
        condition: Callable[[T], bool] = None
    ) -> List[T]:
        items = self.list(condition)
        if not items:
            return []
        lowest = min(key(item) for item in items)
        return [item for item in items if key(item) <= lowest + tolerance * max(1.0, abs(lowest))]
