"""Verification engine: wp/wlp calculus, decision procedure and checks."""
from .calculus import (SEMANTIC_FALLBACK, STRUCTURAL, WLP, WP, expand_wp_terms, guard_distribute,
                       transform, wlp, wp)
from .checks import ERROR, FAIL, PASS, Verdict, equiv, hoare, nmods, nmods_structural, valid
from .decide import equivalent, first_model, is_valid, simplify
