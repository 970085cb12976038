"""Black-box classifier interface."""

from __future__ import annotations

import abc

from ..data.schema import FeatureSchema, Instance
from ..errors import SchemaMismatchError

__all__ = ["Oracle"]


class Oracle(abc.ABC):
    """A classifier the distiller can query. predict must be a pure,
    deterministic function of the instance."""

    kind: str
    schema: FeatureSchema

    @property
    def schema_fingerprint(self) -> str:
        return self.schema.fingerprint()

    @abc.abstractmethod
    def predict(self, instance: Instance) -> str:
        """Class label for one instance."""

    def predict_many(self, instances) -> list[str]:
        return [self.predict(x) for x in instances]

    def ensure_compatible(self, schema: FeatureSchema) -> None:
        if schema.fingerprint() != self.schema_fingerprint:
            raise SchemaMismatchError(
                f"oracle was built against a different schema "
                f"(oracle {self.schema_fingerprint[:12]}.., data {schema.fingerprint()[:12]}..)"
            )

    def metadata(self) -> dict:
        return {"kind": self.kind, "schema_fingerprint": self.schema_fingerprint}
