"""StringForge base models.

Common behaviour for the pydantic models that make up command output.
"""

from typing import Any, Dict, TypeVar

from pydantic import BaseModel

from ..utils.serializers import dumps_canonical

ModelType = TypeVar("ModelType", bound="StringForgeModel")


class StringForgeModel(BaseModel):
    """Base class for report models.

    Exact values are carried as canonical strings (``"p/q"``, expression
    text) so that dumping a model is deterministic.
    """

    model_config = {
        "populate_by_name": True,
        "validate_assignment": True,
        "frozen": False,
        "extra": "forbid",
    }

    def to_dict(self) -> Dict[str, Any]:
        """Convert the model to a JSON-compatible dict."""
        return self.model_dump(mode="json", by_alias=True)

    def to_json(self, indent: int = 2) -> str:
        """Canonical JSON with sorted keys."""
        return dumps_canonical(self.to_dict(), indent=indent)

    def __str__(self) -> str:
        return f"{self.__class__.__name__}({self.to_dict()})"
