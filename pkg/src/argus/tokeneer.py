"""Programmatic builder for the desk-scale Tokeneer ID Station model.

``build_model()`` constructs the same module as ``corpus/tokeneer_mini.gcl``
(structural equality is tested). Declarations are elaborated exactly the way
the .gcl parser elaborates them, so both routes yield identical trees.

The mutation switches exist to show which parts of the model the security
properties depend on.
"""
from __future__ import annotations

from enum import Enum
from pathlib import Path

from .engine.calculus import wp
from .gclfront.module import HOARE, NMODS, VALID, GclModule, Obligation
from .gclfront.printer import format_module
from .kernel.expr import (NONE, And, Bound, Eq, Implies, Leq, Lit, Member, Neq, Not, Or, Plus, SetLit, SomeOf,
                          The, Var, WpTerm, coerce_up, subst)
from .kernel.prog import Assign, Frame, Guard, Havoc, Skip, choice, normalize, seq
from .kernel.types import BoolT, EnumT, IntT, OptionT, Schema, SetT
from .kernel.typing import elaborate_expr, elaborate_prog

MODULE_NAME = "TokeneerMini"
CORPUS_FILE = Path(__file__).resolve().parents[2] / "corpus" / "tokeneer_mini.gcl"

INVARIANTS = ("Inv1", "Inv2", "Inv3", "Inv4", "Inv5")

TIS = ("tis",)
RW = ("rw",)

_TOKEN = ("noT", "badT", "goodNoAuth", "goodWithAuthUser", "goodWithAuthGuard",
          "goodWithAuthAuditMgr", "goodWithAuthSecOfficer")
_PRESENCE = ("present", "absent")
_LATCH = ("unlocked", "locked")
_ALARM = ("silent", "alarming")
_DISPLAY = ("blank", "wait", "insertFinger", "doorUnlocked", "removeToken")
_ADMIN_OPS = ("archiveLog", "updateConfigData", "overrideLock", "shutdownOp")
_FLOPPY = ("noFloppy", "emptyFloppy", "badFloppy", "cfgFloppyA", "cfgFloppyB", "archiveFloppy")
_TIME = IntT(0, 7)


class OpGroup(Enum):
    USER_ENTRY = "UserEntry"
    ADMIN = "Admin"


def tokeneer_schema() -> Schema:
    t = TIS
    r = RW
    return Schema([
        (t + ("status",), EnumT(("quiescent", "gotUserToken", "waitingFinger", "gotFinger",
                                 "waitingUpdateToken", "waitingEntry", "waitingRemoveTokenSuccess",
                                 "waitingRemoveTokenFail"))),
        (t + ("enclaveStatus",), EnumT(("notEnrolled", "enclaveQuiescent", "waitingRemoveAdminTokenFail",
                                        "waitingStartAdminOp", "waitingFinishAdminOp", "shutdown"))),
        (t + ("currentUserToken",), EnumT(_TOKEN)),
        (t + ("currentAdminToken",), EnumT(_TOKEN)),
        (t + ("userTokenPresence",), EnumT(_PRESENCE)),
        (t + ("adminTokenPresence",), EnumT(_PRESENCE)),
        (t + ("fingerPresence",), EnumT(_PRESENCE)),
        (t + ("floppyPresence",), EnumT(_PRESENCE)),
        (t + ("fingerOK",), BoolT()),
        (t + ("floppyConfigValid",), BoolT()),
        (t + ("currentLatch",), EnumT(_LATCH)),
        (t + ("doorAlarm",), EnumT(_ALARM)),
        (t + ("currentDoor",), EnumT(("open", "closed"))),
        (t + ("currentDisplay",), EnumT(_DISPLAY)),
        (t + ("rolePresent",), OptionT(EnumT(("guard", "auditManager", "securityOfficer")))),
        (t + ("availableOps",), SetT(EnumT(_ADMIN_OPS))),
        (t + ("currentAdminOp",), OptionT(EnumT(_ADMIN_OPS))),
        (t + ("currentTime",), _TIME),
        (t + ("latchTimeout",), _TIME),
        (t + ("alarmTimeout",), _TIME),
        (t + ("config",), EnumT(("cfgA", "cfgB"))),
        (t + ("currentFloppy",), EnumT(_FLOPPY)),
        (t + ("ownName",), OptionT(EnumT(("station1",)))),
        (r + ("mon", "now"), _TIME),
        (r + ("mon", "floppy"), EnumT(_FLOPPY)),
        (r + ("ctrl", "latch"), EnumT(_LATCH)),
        (r + ("ctrl", "alarm"), EnumT(_ALARM)),
        (r + ("ctrl", "display"), EnumT(_DISPLAY)),
    ])


# -- raw syntax helpers ------------------------------------------------------------

def v(name: str) -> Var:
    return Var(tuple(name.split(".")))


def c(value) -> Lit:
    return Lit(value)


def is_(name: str, ctor: str):
    return Eq(v(name), c(ctor))


def one_of(name: str, *ctors):
    return Member(v(name), SetLit(tuple(c(k) for k in ctors)))


def all_of(*args):
    return And(tuple(args))


def any_of(*args):
    return Or(tuple(args))


def assign(name: str, e):
    return Assign(tuple(name.split(".")), e)


def set_to(name: str, ctor: str):
    return assign(name, c(ctor))


class _Builder:
    """Holds declarations in order and elaborates each one in its scope."""

    def __init__(self, schema: Schema):
        self.schema = schema
        self.preds: dict = {}
        self.progs: dict = {}
        self.scopes: dict = {}
        self.obligations: dict = {}

    def _sub(self, scope):
        return self.schema.subschema(scope) if scope else self.schema

    def pred(self, name, raw, scope=()):
        e = elaborate_expr(raw, self._sub(scope))
        self.preds[name] = e
        if scope:
            self.scopes[name] = scope
        return e

    def defn(self, name, raw, scope=()):
        p = normalize(elaborate_prog(raw, self._sub(scope)))
        self.progs[name] = p
        if scope:
            self.scopes[name] = scope
        return p

    def wp_term(self, name, post):
        return WpTerm("wp", name, self.progs[name], post)

    def oblige(self, ob: Obligation):
        self.obligations[ob.gid] = ob

    def expr(self, raw):
        return elaborate_expr(raw, self.schema)

    def prog(self, raw):
        return normalize(elaborate_prog(raw, self.schema))

    def module(self) -> GclModule:
        return GclModule(MODULE_NAME, self.schema, self.preds, self.progs, self.obligations, self.scopes)


def build_model(drop_invariants=(), admin_logout_resets_ops: bool = True) -> GclModule:
    """The Tokeneer module.

    ``drop_invariants`` removes named conjuncts (from INVARIANTS) from TIS_inv.
    ``admin_logout_resets_ops=False`` deletes ``availableOps := {}`` from AdminLogout.
    """
    unknown = set(drop_invariants) - set(INVARIANTS)
    if unknown:
        raise ValueError(f"unknown invariants: {', '.join(sorted(unknown))}")
    b = _Builder(tokeneer_schema())
    P = lambda name, raw: b.pred(name, raw, TIS)  # noqa: E731
    D = lambda name, raw: b.defn(name, raw, TIS)  # noqa: E731

    # token and finger checks
    user_ok = P("UserTokenOK", one_of("currentUserToken", "goodNoAuth", "goodWithAuthUser"))
    auth_cert = P("UserTokenWithOKAuthCert", is_("currentUserToken", "goodWithAuthUser"))
    admin_ok = P("AdminTokenOK", one_of("currentAdminToken", "goodWithAuthGuard", "goodWithAuthAuditMgr",
                                        "goodWithAuthSecOfficer"))
    guard_ok = P("AdminTokenGuardOK", is_("currentAdminToken", "goodWithAuthGuard"))
    finger_ok = P("FingerOK", v("fingerOK"))

    # well-formedness
    locked = is_("currentLatch", "locked")
    dla = P("DoorLatchAlarm", all_of(
        Eq(locked, Leq(v("latchTimeout"), v("currentTime"))),
        Eq(is_("doorAlarm", "alarming"),
           all_of(is_("currentDoor", "open"), locked, Leq(v("alarmTimeout"), v("currentTime"))))))
    key_store = P("KeyStore", Implies(Neq(v("enclaveStatus"), c("notEnrolled")), Neq(v("ownName"), NONE)))
    role = v("rolePresent")
    admin = P("Admin", all_of(
        Implies(Neq(role, NONE), Member(The(role), SetLit((c("guard"), c("auditManager"),
                                                           c("securityOfficer"))))),
        Implies(Eq(role, NONE), Eq(v("availableOps"), SetLit(()))),
        Implies(Eq(role, SomeOf(c("guard"))), Eq(v("availableOps"), SetLit((c("overrideLock"),)))),
        Implies(Eq(role, SomeOf(c("auditManager"))), Eq(v("availableOps"), SetLit((c("archiveLog"),)))),
        Implies(Eq(role, SomeOf(c("securityOfficer"))),
                Eq(v("availableOps"), SetLit((c("updateConfigData"), c("shutdownOp"))))),
        Implies(Neq(v("currentAdminOp"), NONE),
                all_of(Member(The(v("currentAdminOp")), v("availableOps")), Neq(role, NONE)))))
    admin_wf = P("AdminTokenWf", Implies(one_of("enclaveStatus", "waitingStartAdminOp", "waitingFinishAdminOp"),
                                         Neq(role, NONE)))
    user_wf = P("UserTokenWf", Implies(is_("userTokenPresence", "absent"),
                                       one_of("status", "quiescent", "waitingRemoveTokenSuccess",
                                              "waitingRemoveTokenFail")))
    tis_wf = P("TIS_wf", all_of(dla, key_store, admin, admin_wf, user_wf))
    horizon = P("TimeHorizon", Leq(v("currentTime"), c(5)))

    # state invariants
    invs = {
        "Inv1": P("Inv1", Implies(one_of("status", "gotFinger", "waitingFinger", "waitingUpdateToken",
                                         "waitingEntry", "waitingRemoveTokenSuccess"),
                                  any_of(auth_cert, user_ok))),
        "Inv2": P("Inv2", Implies(one_of("status", "waitingEntry", "waitingRemoveTokenSuccess"),
                                  any_of(auth_cert, finger_ok))),
        "Inv3": P("Inv3", Implies(Neq(role, NONE), admin_ok)),
        "Inv4": P("Inv4", Implies(Member(v("currentAdminOp"), SetLit((SomeOf(c("shutdownOp")),
                                                                       SomeOf(c("overrideLock"))))),
                                  Neq(v("ownName"), NONE))),
        "Inv5": P("Inv5", Implies(all_of(is_("adminTokenPresence", "present"), Neq(role, NONE)),
                                  any_of(all_of(Eq(role, SomeOf(c("guard"))),
                                                is_("currentAdminToken", "goodWithAuthGuard")),
                                         all_of(Eq(role, SomeOf(c("auditManager"))),
                                                is_("currentAdminToken", "goodWithAuthAuditMgr")),
                                         all_of(Eq(role, SomeOf(c("securityOfficer"))),
                                                is_("currentAdminToken", "goodWithAuthSecOfficer"))))),
    }
    tis_inv = P("TIS_inv", all_of(tis_wf, horizon,
                                  *(invs[n] for n in INVARIANTS if n not in drop_invariants)))
    admin_ctx = P("AdminOpContext", all_of(Neq(role, NONE), Neq(v("currentAdminOp"), NONE)))

    # door primitives
    unlock = D("UnlockDoor", seq(
        assign("latchTimeout", Plus(v("currentTime"), c(1))),
        assign("alarmTimeout", Plus(Plus(v("currentTime"), c(1)), c(1))),
        set_to("currentLatch", "unlocked"), set_to("doorAlarm", "silent")))
    lock = D("LockDoor", seq(
        set_to("currentLatch", "locked"), set_to("doorAlarm", "silent"),
        assign("latchTimeout", v("currentTime")), assign("alarmTimeout", v("currentTime"))))

    # user entry
    token_in = is_("userTokenPresence", "present")
    token_out = is_("userTokenPresence", "absent")
    user_ops = {}

    def user(name, cond, *body):
        user_ops[name] = D(name, Guard(cond, seq(*body)))

    user("ReadUserToken",
         all_of(one_of("enclaveStatus", "enclaveQuiescent", "waitingRemoveAdminTokenFail"),
                is_("status", "quiescent"), token_in),
         set_to("currentDisplay", "wait"), set_to("status", "gotUserToken"))
    user("BioCheckRequired",
         all_of(is_("status", "gotUserToken"), token_in, user_ok, Not(auth_cert)),
         set_to("status", "waitingFinger"), set_to("currentDisplay", "insertFinger"))
    user("BioCheckNotRequired",
         all_of(is_("status", "gotUserToken"), token_in, auth_cert),
         set_to("status", "waitingEntry"), set_to("currentDisplay", "wait"))
    user("ValidateUserTokenFail",
         all_of(is_("status", "gotUserToken"), token_in, Not(user_ok)),
         set_to("status", "waitingRemoveTokenFail"), set_to("currentDisplay", "removeToken"))
    user("ReadFingerOK",
         all_of(is_("status", "waitingFinger"), is_("fingerPresence", "present"), token_in),
         set_to("status", "gotFinger"), set_to("currentDisplay", "wait"))
    user("ValidateFingerOK",
         all_of(is_("status", "gotFinger"), token_in, finger_ok),
         set_to("status", "waitingUpdateToken"), set_to("currentDisplay", "wait"))
    user("ValidateFingerFail",
         all_of(is_("status", "gotFinger"), token_in, Not(finger_ok)),
         set_to("status", "waitingRemoveTokenFail"), set_to("currentDisplay", "removeToken"))
    user("WriteUserTokenOK",
         all_of(is_("status", "waitingUpdateToken"), token_in),
         set_to("currentUserToken", "goodWithAuthUser"), set_to("status", "waitingEntry"),
         set_to("currentDisplay", "wait"))
    user("EntryOK",
         all_of(is_("status", "waitingEntry"), token_in, any_of(auth_cert, user_ok)),
         set_to("status", "waitingRemoveTokenSuccess"), set_to("currentDisplay", "removeToken"))
    user("EntryNotAllowed",
         all_of(is_("status", "waitingEntry"), token_in, Not(any_of(auth_cert, user_ok))),
         set_to("status", "waitingRemoveTokenFail"), set_to("currentDisplay", "removeToken"))
    user("UnlockDoorOK",
         all_of(is_("status", "waitingRemoveTokenSuccess"), token_out),
         unlock, set_to("status", "quiescent"), set_to("currentDisplay", "doorUnlocked"))
    user("FailedAccess",
         all_of(is_("status", "waitingRemoveTokenFail"), token_out),
         set_to("status", "quiescent"), set_to("currentDisplay", "blank"))

    # administration
    admin_in = is_("adminTokenPresence", "present")
    logout_body = [assign("rolePresent", NONE), assign("currentAdminOp", NONE)]
    if admin_logout_resets_ops:
        logout_body.append(assign("availableOps", SetLit(())))
    logout = D("AdminLogout", Guard(Neq(role, NONE), seq(*logout_body)))

    def logon_as(token, who, *ops):
        return Guard(is_("currentAdminToken", token),
                     seq(assign("rolePresent", SomeOf(c(who))),
                         assign("availableOps", SetLit(tuple(c(o) for o in ops)))))

    logon = D("AdminLogon", Guard(
        all_of(is_("enclaveStatus", "enclaveQuiescent"), Eq(role, NONE), admin_in, admin_ok),
        choice(logon_as("goodWithAuthGuard", "guard", "overrideLock"),
               logon_as("goodWithAuthAuditMgr", "auditManager", "archiveLog"),
               logon_as("goodWithAuthSecOfficer", "securityOfficer", "updateConfigData", "shutdownOp"))))
    start_op = D("StartAdminOp", Guard(
        all_of(is_("enclaveStatus", "enclaveQuiescent"), Neq(role, NONE), admin_in,
               Eq(v("currentAdminOp"), NONE)),
        seq(choice(*(Guard(Member(c(o), v("availableOps")), assign("currentAdminOp", SomeOf(c(o))))
                     for o in _ADMIN_OPS)),
            set_to("enclaveStatus", "waitingStartAdminOp"))))

    def op_is(o):
        return Eq(v("currentAdminOp"), SomeOf(c(o)))

    override = D("OverrideDoorLockOK", Guard(
        all_of(is_("enclaveStatus", "waitingStartAdminOp"), admin_in, op_is("overrideLock")),
        seq(set_to("currentDisplay", "doorUnlocked"), set_to("enclaveStatus", "enclaveQuiescent"),
            unlock, assign("currentAdminOp", NONE))))
    shutdown = D("ShutdownOK", Guard(
        all_of(is_("enclaveStatus", "waitingStartAdminOp"), op_is("shutdownOp"), is_("currentDoor", "closed")),
        seq(lock, logout, set_to("enclaveStatus", "shutdown"), set_to("currentDisplay", "blank"))))
    floppy_in = is_("floppyPresence", "present")
    start_cfg = D("StartUpdateConfigOK", Guard(
        all_of(is_("enclaveStatus", "waitingStartAdminOp"), admin_in, op_is("updateConfigData"), floppy_in),
        set_to("enclaveStatus", "waitingFinishAdminOp")))
    finish_cfg = D("FinishUpdateConfigOK", Guard(
        all_of(is_("enclaveStatus", "waitingFinishAdminOp"), admin_in, op_is("updateConfigData"), floppy_in,
               one_of("currentFloppy", "cfgFloppyA", "cfgFloppyB"), v("floppyConfigValid")),
        seq(choice(Guard(is_("currentFloppy", "cfgFloppyA"), set_to("config", "cfgA")),
                   Guard(is_("currentFloppy", "cfgFloppyB"), set_to("config", "cfgB"))),
            set_to("enclaveStatus", "enclaveQuiescent"), assign("currentAdminOp", NONE))))
    start_arc = D("StartArchiveLogOK", Guard(
        all_of(is_("enclaveStatus", "waitingStartAdminOp"), admin_in, op_is("archiveLog"), floppy_in),
        set_to("enclaveStatus", "waitingFinishAdminOp")))
    finish_arc = D("FinishArchiveLogOK", Guard(
        all_of(is_("enclaveStatus", "waitingFinishAdminOp"), admin_in, op_is("archiveLog"), floppy_in,
               is_("currentFloppy", "emptyFloppy")),
        seq(set_to("currentFloppy", "archiveFloppy"), set_to("enclaveStatus", "enclaveQuiescent"),
            assign("currentAdminOp", NONE))))

    # promotion to the whole system
    monitored = b.defn("MonitoredChange", seq(
        Frame(RW, seq(Havoc(("mon", "now"), Leq(v("mon.now"), Bound("new"))),
                      Havoc(("mon", "floppy"), c(True))))))

    def promote(name, body):
        return b.defn(name, seq(Frame(TIS, body), monitored))

    u = user_ops
    promoted_user = [
        promote("TISReadUserToken", u["ReadUserToken"]),
        promote("TISValidateUserToken", choice(u["BioCheckRequired"], u["BioCheckNotRequired"],
                                               u["ValidateUserTokenFail"])),
        promote("TISReadFinger", u["ReadFingerOK"]),
        promote("TISValidateFinger", choice(u["ValidateFingerOK"], u["ValidateFingerFail"])),
        promote("TISWriteUserToken", u["WriteUserTokenOK"]),
        promote("TISValidateEntry", choice(u["EntryOK"], u["EntryNotAllowed"])),
        promote("TISUnlockDoor", u["UnlockDoorOK"]),
        promote("TISCompleteFailedAccess", u["FailedAccess"]),
    ]
    promoted_admin = [
        promote("TISOverrideDoorLockOp", Guard(admin_ctx, override)),
        promote("TISShutdownOp", Guard(admin_ctx, shutdown)),
        promote("TISUpdateConfigDataOp", Guard(admin_ctx, choice(start_cfg, finish_cfg))),
        promote("TISArchiveLogOp", Guard(admin_ctx, choice(start_arc, finish_arc))),
    ]
    tis_logon = promote("TISAdminLogon", logon)
    tis_start = promote("TISStartAdminOp", start_op)
    tis_logout = promote("TISAdminLogout", Guard(
        all_of(is_("adminTokenPresence", "absent"), Neq(role, NONE), Neq(v("enclaveStatus"), c("notEnrolled"))),
        seq(logout, set_to("enclaveStatus", "enclaveQuiescent"))))
    tis_idle = promote("TISIdle", Skip())

    user_entry = b.defn("TISUserEntryOp", choice(*promoted_user))
    admin_op = b.defn("TISAdminOp", choice(*promoted_admin))
    tis_op = b.defn("TISOp", choice(user_entry, tis_logon, tis_start, admin_op, tis_logout, tis_idle))
    update = b.defn("TISUpdate", seq(monitored, assign("rw.ctrl.latch", v("tis.currentLatch")),
                                     assign("rw.ctrl.display", v("tis.currentDisplay"))))
    b.defn("TISOpThenUpdate", seq(tis_op, update))
    b.defn("TISUserEntryOpThenUpdate", seq(user_entry, update))
    b.defn("TISAdminOpThenUpdate", seq(admin_op, update))

    # security requirements
    latch_unlocked = is_("rw.ctrl.latch", "unlocked")
    b.pred("FSFR1", Implies(
        all_of(coerce_up(all_of(tis_inv, locked), TIS), b.wp_term("TISOpThenUpdate", latch_unlocked)),
        coerce_up(any_of(all_of(user_ok, finger_ok), auth_cert, guard_ok), TIS)))
    alarm_due = [locked, is_("currentDoor", "open"), Leq(v("alarmTimeout"), v("currentTime"))]
    fsfr3 = b.pred("FSFR3", coerce_up(Implies(all_of(tis_inv, *alarm_due), is_("doorAlarm", "alarming")), TIS))

    inv_up = b.expr(coerce_up(tis_inv, TIS))
    for gid, name in (("TIS_UserEntryOp_inv", "TISUserEntryOp"), ("TIS_AdminOp_inv", "TISAdminOp"),
                      ("TIS_Op_inv", "TISOp")):
        b.oblige(Obligation(gid, HOARE, pre=inv_up, prog=b.progs[name], post=inv_up, prog_name=name))
    b.oblige(Obligation("FSFR1_thm", VALID, goal=b.expr(b.preds["FSFR1"])))
    b.oblige(Obligation("FSFR3_thm", VALID, goal=b.expr(fsfr3)))
    b.oblige(Obligation("FSFR3_from_wf", VALID, goal=b.expr(coerce_up(
        Implies(all_of(tis_wf, *alarm_due), is_("doorAlarm", "alarming")), TIS))))
    b.oblige(Obligation("FSFR6_thm", NMODS, prog=b.prog(Guard(is_("tis.adminTokenPresence", "absent"), tis_op)),
                        vars=(("tis", "config"), ("tis", "currentFloppy"))))
    for gid, name, rhs in (
            ("Unlock_UserEntry_pre", "TISUserEntryOpThenUpdate", USER_UNLOCK_RHS),
            ("Unlock_Admin_pre", "TISAdminOpThenUpdate", ADMIN_UNLOCK_RHS)):
        b.oblige(Obligation(gid, VALID, goal=b.expr(Implies(
            is_("tis.currentLatch", "locked"),
            Eq(b.wp_term(name, latch_unlocked), coerce_up(rhs, TIS))))))
    return b.module()


# right-hand sides of the unlocking precondition equations, over tis
USER_UNLOCK_RHS = all_of(is_("status", "waitingRemoveTokenSuccess"), is_("userTokenPresence", "absent"))
ADMIN_UNLOCK_RHS = all_of(is_("enclaveStatus", "waitingStartAdminOp"), is_("adminTokenPresence", "present"),
                          Eq(v("currentAdminOp"), SomeOf(c("overrideLock"))), Neq(v("rolePresent"), NONE),
                          Neq(v("currentAdminOp"), NONE))

_GROUP_PROG = {OpGroup.USER_ENTRY: "TISUserEntryOp", OpGroup.ADMIN: "TISAdminOp"}


def unlocking_precondition(group, model: GclModule | None = None, latch: str = "locked"):
    """wp(group ; TISUpdate, rw.ctrl.latch = unlocked) with tis.currentLatch fixed to ``latch``."""
    group = OpGroup(group)
    m = model or build_model()
    p = seq(m.progs[_GROUP_PROG[group]], m.progs["TISUpdate"])
    post = elaborate_expr(is_("rw.ctrl.latch", "unlocked"), m.schema)
    return subst(wp(p, post, m.schema), ("tis", "currentLatch"), Lit(latch))


def unlocking_rhs(group, model: GclModule | None = None):
    """The expected unlocking precondition, elaborated over the whole state."""
    m = model or build_model()
    rhs = USER_UNLOCK_RHS if OpGroup(group) is OpGroup.USER_ENTRY else ADMIN_UNLOCK_RHS
    return elaborate_expr(coerce_up(rhs, TIS), m.schema)


def mutated_source(drop_invariants=(), admin_logout_resets_ops: bool = True) -> str:
    """.gcl text of a mutated model, for feeding mutants to the command line."""
    return format_module(build_model(drop_invariants, admin_logout_resets_ops))


def corpus_text() -> str:
    return CORPUS_FILE.read_text()
