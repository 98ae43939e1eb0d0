"""Finite-state kernel: types, schemas, expressions, programs and their semantics."""
from .types import (BoolT, DEFAULT_STATE_BOUND, EnumT, FiniteType, IntT, OptionT, Schema, SchemaError,
                    SetT, Some, State, StateSpaceTooLarge, format_path, format_value, independent,
                    is_prefix, states)
from .expr import (FALSE, NONE, TRUE, And, Bound, Eq, Exists, Expr, Forall, Implies, InSet, Leq, Lit,
                   Lt, Member, Neq, Not, NotUsedBy, Or, Plus, SetLit, SomeOf, The, Var, WpTerm,
                   coerce_down, coerce_up, conj, disj, eval_expr, free_paths, subst, subst_many,
                   unrest, usedby)
from .prog import Abort, Assign, Choice, Frame, Guard, Havoc, Prog, Seq, Skip, choice, seq, writes
from .semantics import denote, relation, successors
from .typing import GclTypeError, elaborate_expr, elaborate_prog

