#!/usr/bin/env python3
"""
Model descriptor grammar:

    Fq:<q> | Qp:<p> | R | QS:<p1,p2,...> | Tower(<descriptor>;<var>)

Built-in model names from BUILTIN_MODEL_MAPPING (Q2, RX, ...) are accepted
wherever a descriptor is.
"""
import logging
from functools import lru_cache
from typing import List, Optional

from pydantic import BaseModel

import algebra_config
from errors import DescriptorError
from field_models import FieldModel, FiniteField, LaurentTower, PAdicField, RationalS, RealField

logger = logging.getLogger(__name__)

KINDS = ("Fq", "Qp", "R", "QS", "Tower")


class ModelDescriptor(BaseModel):
    kind: str
    params: List[int] = []
    base: Optional["ModelDescriptor"] = None
    var: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "ModelDescriptor":
        text = (text or "").strip()
        if not text:
            raise DescriptorError("empty model descriptor")
        try:
            text = algebra_config.get_model_config(text)["descriptor"]
        except ValueError:
            pass

        if text.startswith("Tower(") and text.endswith(")"):
            inner = text[len("Tower("):-1]
            if ";" not in inner:
                raise DescriptorError(f"Tower descriptor needs '<base>;<var>': {text!r}")
            base_text, var = inner.rsplit(";", 1)
            var = var.strip()
            if not var.isidentifier():
                raise DescriptorError(f"bad tower variable {var!r}")
            return cls(kind="Tower", base=cls.parse(base_text), var=var)
        if text == "R":
            return cls(kind="R")
        kind, sep, args = text.partition(":")
        if not sep or kind not in ("Fq", "Qp", "QS"):
            raise DescriptorError(f"unknown model descriptor {text!r}; expected one of {', '.join(KINDS)}")
        try:
            params = [int(a) for a in args.split(",")]
        except ValueError as e:
            raise DescriptorError(f"descriptor parameters must be integers: {text!r}") from e
        if kind != "QS" and len(params) != 1:
            raise DescriptorError(f"{kind} takes exactly one parameter: {text!r}")
        return cls(kind=kind, params=params)

    def to_text(self) -> str:
        if self.kind == "Tower":
            return f"Tower({self.base.to_text()};{self.var})"
        if self.kind == "R":
            return "R"
        return f"{self.kind}:" + ",".join(str(p) for p in self.params)

    def build(self) -> FieldModel:
        if self.kind == "Fq":
            return FiniteField(self.params[0])
        if self.kind == "Qp":
            return PAdicField(self.params[0])
        if self.kind == "R":
            return RealField()
        if self.kind == "QS":
            return RationalS(self.params)
        if self.kind == "Tower":
            return LaurentTower(self.base.build(), self.var)
        raise DescriptorError(f"unknown model kind {self.kind!r}")


ModelDescriptor.model_rebuild()


@lru_cache(maxsize=None)
def build_model(text: str) -> FieldModel:
    """Parse and build a model; identical descriptors share one instance."""
    model = ModelDescriptor.parse(text).build()
    logger.debug("built %s", model.descriptor)
    return model
