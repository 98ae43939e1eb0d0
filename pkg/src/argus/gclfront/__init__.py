"""Frontend for .gcl files: schemas, named predicates and programs, obligations."""
from .module import EQUIV, HOARE, NMODS, VALID, GclModule, Obligation
from .parser import parse_gcl
from .printer import format_expr, format_module, format_obligation, format_prog, format_type
