"""Session files, value bindings and command dispatch."""

import re
import time
from contextlib import nullcontext
from dataclasses import dataclass, field

from ..coeffield import parse_field_block
from ..errors import (DuplicateName, OreError, ParseError, UnknownSymbol, WrongKind)
from ..gauge import analyze_ideal, dimension_polynomial_m2
from ..groebner import (GroebnerBasis, LeftIdeal, budget_limit, buchberger,
                        check_right_factor, generators_of, ideal_intersect, ideal_sum,
                        member, principal_generator)
from ..ore import (TermOrder, op_mul, parse_operator, right_reduce, verify_factorization,
                   verify_intertwine)
from ..series import (Chain, analyze, chain_from_right_factorization,
                      compare_quotient_gauges, make_chain, refine, validate_chain)
from .report import Report

COMMANDS = ("def", "mul", "reduce", "gb", "member", "sum", "intersect", "principal",
            "rightfactor", "gauge", "dimpoly", "chain", "analyze", "refine", "compare",
            "verify-factor", "intertwine")

# names that commands rebind freely
RESULT_NAMES = ("result", "result_g", "result_h")
RESERVED = ("unit", "zero", "ideal", "chain", "factors")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_CALL = re.compile(r"\s*(ideal|chain|factors)\s*\((.*)\)\s*$", re.S)
_SECTION = re.compile(r"\[(field|defs|run)\]$")


def _article(kind):
    return ("an " if kind[0] in "aeiou" else "a ") + kind


@dataclass
class Value:
    kind: str   # "operator", "ideal", "factors", "chain"
    obj: object


@dataclass
class Session:
    """Field spec, bound values, default order and the log of executed commands."""

    spec: object
    order: TermOrder
    bindings: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    pair_budget: int = None

    @classmethod
    def from_field(cls, field_text, order_text=None, pair_budget=None):
        spec, declared = parse_field_block(field_text)
        order = TermOrder.grlex(spec, order_text or declared)
        return cls(spec, order, pair_budget=pair_budget)

    # -- bindings -------------------------------------------------------------

    def bind(self, name, value):
        if not _IDENT.match(name):
            raise ParseError(f"bad binding name {name!r}")
        if name in RESERVED:
            raise ParseError(f"{name!r} is a reserved word")
        if name in self.spec.derivation_names or name in self.spec.symbols:
            raise DuplicateName(name)
        if name in self.bindings and name not in RESULT_NAMES:
            raise DuplicateName(name)
        self.bindings[name] = value

    def operators(self):
        return {k: v.obj for k, v in self.bindings.items() if v.kind == "operator"}

    def render(self, f):
        return f.render(self.order)

    # -- evaluation of right-hand sides ---------------------------------------

    def parse_op(self, text):
        try:
            return parse_operator(text, self.spec, self.operators())
        except UnknownSymbol as exc:
            if exc.name in self.bindings:
                kind = self.bindings[exc.name].kind
                raise WrongKind(f"{exc.name!r} is bound to a {kind}, "
                                "not an operator") from None
            raise

    def evaluate(self, text):
        """Value of a definition right-hand side."""
        text = text.strip()
        if not text:
            raise ParseError("empty expression")
        m = _CALL.match(text)
        if m:
            kind, inner = m.groups()
            items = split_top_level(inner)
            if kind == "ideal":
                gens = []
                for item in items:
                    gens += generators_of(self.as_ideal(self.item(item)))
                if not gens:
                    raise ParseError("ideal() needs at least one generator")
                return Value("ideal", LeftIdeal(gens, self.spec))
            if kind == "factors":
                return Value("factors", tuple(self.as_operator(self.item(i)) for i in items))
            return Value("chain", tuple(self.as_ideal(self.item(i)) for i in items))
        if _IDENT.match(text) and text in self.bindings:
            return self.bindings[text]
        return Value("operator", self.parse_op(text))

    def item(self, text):
        text = text.strip()
        if text == "unit":
            return Value("ideal", LeftIdeal.unit(self.spec))
        if text == "zero":
            return Value("ideal", LeftIdeal.zero(self.spec))
        return self.evaluate(text)

    def argument(self, token):
        if token.startswith("{"):
            return self.item(token[1:-1])
        return self.item(token)

    # -- coercions ------------------------------------------------------------

    def as_operator(self, v):
        if v.kind != "operator":
            raise WrongKind(f"expected an operator, got {_article(v.kind)}")
        return v.obj

    def as_ideal(self, v):
        if v.kind == "operator":
            return LeftIdeal([v.obj], self.spec)
        if v.kind != "ideal":
            raise WrongKind(f"expected an ideal, got {_article(v.kind)}")
        return v.obj

    def as_basis(self, v):
        I = self.as_ideal(v)
        if isinstance(I, GroebnerBasis) and I.order == self.order:
            return I
        return buchberger(I, self.order)

    def as_chain(self, v):
        if v.kind == "factors":
            return chain_from_right_factorization(v.obj, self.order)
        if v.kind != "chain":
            raise WrongKind(f"expected a chain or factor list, got {_article(v.kind)}")
        if isinstance(v.obj, Chain):
            return v.obj
        return make_chain(v.obj, self.order)

    # -- payloads -------------------------------------------------------------

    def basis_payload(self, B):
        return {"basis": [self.render(g) for g in B.elements],
                "leading_indices": [list(e) for e in B.leading_indices()],
                "unit": B.is_unit(),
                "zero": B.is_zero()}

    def ideal_payload(self, B):
        _, E, omega, gauge = analyze_ideal(B, self.order)
        out = self.basis_payload(B)
        out.update(staircase_payload(E, omega, gauge))
        return out

    def chain_payload(self, chain):
        return [self.ideal_payload(B) for B in chain.ideals]


def staircase_payload(E, omega, gauge):
    return {"staircase": [list(e) for e in E.sorted()],
            "omega": omega_payload(omega),
            "gauge": list(gauge)}


def omega_payload(omega):
    return {"binomial": list(omega.binomial_coefficients),
            "binomial_form": omega.binomial_form(),
            "expanded": omega.expanded(),
            "valid_from": omega.valid_from}


def split_top_level(text, sep=","):
    """Split on ``sep`` outside parentheses and braces; empty input gives []."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    if len(parts) == 1 and not parts[0].strip():
        return []
    for p in parts:
        if not p.strip():
            raise ParseError(f"empty item in {text!r}")
    return parts


def split_command(line):
    """Command word plus arguments; ``{...}`` groups may contain spaces."""
    tokens, cur, depth = [], [], 0
    for ch in line.strip():
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced braces in {line!r}")
        if ch.isspace() and depth == 0:
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced braces in {line!r}")
    if cur:
        tokens.append("".join(cur))
    if not tokens:
        raise ParseError("empty command")
    return tokens[0], tokens[1:]


def _arity(name, args, lo, hi=None):
    hi = lo if hi is None else hi
    if not lo <= len(args) <= (hi if hi >= 0 else len(args)):
        want = str(lo) if lo == hi else (f"{lo}+" if hi < 0 else f"{lo}-{hi}")
        raise ParseError(f"{name} takes {want} argument(s), got {len(args)}")


# -- commands ---------------------------------------------------------------------

def _cmd_def(s, rest):
    name, eq, rhs = rest.partition("=")
    name = name.strip()
    if not eq:
        raise ParseError("def needs the form 'def NAME = EXPR'")
    v = s.evaluate(rhs)
    s.bind(name, v)
    out = {"name": name, "kind": v.kind}
    if v.kind == "operator":
        out["operator"] = s.render(v.obj)
    elif v.kind == "ideal":
        out["generators"] = [s.render(g) for g in generators_of(v.obj)]
    elif v.kind == "factors":
        out["factors"] = [s.render(f) for f in v.obj]
    else:
        out["length"] = len(v.obj)
    return out


def _cmd_mul(s, args):
    _arity("mul", args, 2, -1)
    ops = [s.as_operator(s.argument(a)) for a in args]
    prod = ops[0]
    for f in ops[1:]:
        prod = op_mul(prod, f)
    s.bindings["result"] = Value("operator", prod)
    return {"operator": s.render(prod), "order": prod.order}


def _cmd_reduce(s, args):
    _arity("reduce", args, 2, -1)
    f = s.as_operator(s.argument(args[0]))
    divisors = []
    for a in args[1:]:
        v = s.argument(a)
        divisors += [v.obj] if v.kind == "operator" else generators_of(s.as_ideal(v))
    rem, cof = right_reduce(f, divisors, s.order)
    return {"remainder": s.render(rem),
            "cofactors": [s.render(q) for q in cof],
            "divisors": [s.render(g) for g in divisors]}


def _ideal_result(s, B):
    s.bindings["result"] = Value("ideal", B)
    return s.ideal_payload(B)


def _cmd_gb(s, args):
    _arity("gb", args, 1)
    return _ideal_result(s, s.as_basis(s.argument(args[0])))


def _cmd_member(s, args):
    _arity("member", args, 2)
    f = s.as_operator(s.argument(args[0]))
    return {"member": member(f, s.as_basis(s.argument(args[1])))}


def _cmd_sum(s, args):
    _arity("sum", args, 2)
    I, J = (s.as_ideal(s.argument(a)) for a in args)
    return _ideal_result(s, ideal_sum(I, J, s.order))


def _cmd_intersect(s, args):
    _arity("intersect", args, 2)
    I, J = (s.as_ideal(s.argument(a)) for a in args)
    return _ideal_result(s, ideal_intersect(I, J, s.order))


def _cmd_principal(s, args):
    _arity("principal", args, 1)
    B = s.as_basis(s.argument(args[0]))
    g = principal_generator(B)
    s.bindings["result"] = Value("ideal", B)
    out = s.basis_payload(B)
    out["principal"] = g is not None
    out["generator"] = None if g is None else s.render(g)
    return out


def _cmd_rightfactor(s, args):
    _arity("rightfactor", args, 2)
    I = s.as_ideal(s.argument(args[0]))
    R = s.as_operator(s.argument(args[1]))
    return {"right_factor": check_right_factor(I, R, s.order)}


def _cmd_gauge(s, args):
    _arity("gauge", args, 1)
    B = s.as_basis(s.argument(args[0]))
    return s.ideal_payload(B)


def _cmd_dimpoly(s, args):
    _arity("dimpoly", args, 1)
    B = s.as_basis(s.argument(args[0]))
    _, E, omega, gauge = analyze_ideal(B, s.order)
    out = staircase_payload(E, omega, gauge)
    if s.spec.m == 2:
        out["closed_form_m2"] = omega_payload(dimension_polynomial_m2(E))
    return out


def _cmd_chain(s, args):
    _arity("chain", args, 1)
    chain = s.as_chain(s.argument(args[0]))
    validate_chain(chain)
    s.bindings["result"] = Value("chain", chain)
    out = {"length": len(chain.ideals) - 1, "ideals": s.chain_payload(chain)}
    if chain.factors is not None:
        out["factors"] = [s.render(f) for f in chain.factors]
    return out


def _cmd_analyze(s, args):
    _arity("analyze", args, 1)
    chain = s.as_chain(s.argument(args[0]))
    out = analyze(chain).to_dict()
    out["bases"] = [[s.render(g) for g in B.elements] for B in chain.ideals]
    return out


def _cmd_refine(s, args):
    _arity("refine", args, 2)
    cg, ch = (s.as_chain(s.argument(a)) for a in args)
    ref = refine(cg, ch)
    s.bindings["result_g"] = Value("chain", ref.essential_g)
    s.bindings["result_h"] = Value("chain", ref.essential_h)
    out = ref.to_dict()
    for key in ("full_g", "full_h", "essential_g", "essential_h"):
        out[key] = s.chain_payload(getattr(ref, key))
    return out


def _cmd_compare(s, args):
    _arity("compare", args, 2)
    ca, cb = (s.as_chain(s.argument(a)) for a in args)
    return compare_quotient_gauges(ca, cb).to_dict()


def _cmd_verify_factor(s, args):
    _arity("verify-factor", args, 2, -1)
    L = s.as_operator(s.argument(args[0]))
    factors = []
    for a in args[1:]:
        v = s.argument(a)
        factors += list(v.obj) if v.kind == "factors" else [s.as_operator(v)]
    return {"equal": verify_factorization(L, factors),
            "factors": [s.render(f) for f in factors]}


def _cmd_intertwine(s, args):
    _arity("intertwine", args, 3)
    A, P, B = (s.as_operator(s.argument(a)) for a in args)
    rem, cof = right_reduce(op_mul(A, P), [B], s.order)
    return {"intertwines": verify_intertwine(A, P, B, s.order),
            "quotient": s.render(cof[0]) if rem.is_zero() else None,
            "remainder": s.render(rem)}


_DISPATCH = {
    "mul": _cmd_mul, "reduce": _cmd_reduce, "gb": _cmd_gb, "member": _cmd_member,
    "sum": _cmd_sum, "intersect": _cmd_intersect, "principal": _cmd_principal,
    "rightfactor": _cmd_rightfactor, "gauge": _cmd_gauge, "dimpoly": _cmd_dimpoly,
    "chain": _cmd_chain, "analyze": _cmd_analyze, "refine": _cmd_refine,
    "compare": _cmd_compare, "verify-factor": _cmd_verify_factor,
    "intertwine": _cmd_intertwine,
}


def _error_payload(exc):
    out = {"type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "position", None) is not None:
        out["position"] = exc.position
    return out


def run_command(session, command):
    """Execute one command line and return its Report; errors never escape."""
    command = command.strip()
    start = time.perf_counter()
    budget = (budget_limit(session.pair_budget) if session.pair_budget is not None
              else nullcontext())
    try:
        with budget:
            word, args = split_command(command)
            if word == "def":
                result = _cmd_def(session, command[3:])
            elif word in _DISPATCH:
                result = _DISPATCH[word](session, args)
            else:
                raise ParseError(f"unknown command {word!r}")
        report = Report(command, True, result)
    except OreError as exc:
        report = Report(command, False, {}, _error_payload(exc), exc.exit_code)
    except (ArithmeticError, ValueError, RecursionError) as exc:
        report = Report(command, False, {}, _error_payload(exc), 2)
    report.timing = round(time.perf_counter() - start, 6)
    session.log.append(report)
    return report


# -- session files ----------------------------------------------------------------

def split_sections(text):
    """``{"field": [...], "defs": [...], "run": [...]}`` of (line number, line)."""
    sections = {"field": [], "defs": [], "run": []}
    current = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            current = m.group(1)
            if current in seen:
                raise ParseError(f"section [{current}] repeated on line {lineno}")
            seen.add(current)
            continue
        if line.startswith("["):
            raise ParseError(f"unknown section {line!r} on line {lineno}")
        if current is None:
            raise ParseError(f"line {lineno} is outside any section")
        sections[current].append((lineno, line))
    if "field" not in seen:
        raise ParseError("session has no [field] section")
    return sections


def run_session(text, order_text=None, pair_budget=None, extra=()):
    """Run a whole session file, stopping at the first failure.

    Returns ``(session_or_None, reports, exit_code)``.  Each ``[defs]`` line
    becomes a ``def`` command; ``extra`` commands run after ``[run]``.
    """
    try:
        sections = split_sections(text)
        field_text = "\n".join(line for _, line in sections["field"])
        session = Session.from_field(field_text, order_text, pair_budget)
    except OreError as exc:
        report = Report("[field]", False, {}, _error_payload(exc), exc.exit_code)
        return None, [report], exc.exit_code
    commands = [f"def {line}" for _, line in sections["defs"]]
    commands += [line for _, line in sections["run"]]
    commands += list(extra)
    return session, *run_commands(session, commands)


def run_commands(session, commands):
    reports = []
    for command in commands:
        report = run_command(session, command)
        reports.append(report)
        if not report.ok:
            return reports, report.exit_code
    return reports, 0
