"""Linear forms, collections of them (repeats allowed) and line arrangements."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError, InputError, RankError
from .exactalg import FieldSpec, canonical_vector

DEFAULT_VARIABLES = "xyzw"


@dataclass(frozen=True)
class LinForm:
    """A nonzero linear form c_1 x_1 + ... + c_k x_k."""

    field: FieldSpec
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.field(c) for c in self.coeffs)
        if not coeffs or all(c == 0 for c in coeffs):
            raise InputError("a linear form must have a nonzero coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def __call__(self, point: Sequence):
        f = self.field
        total = f.zero
        for c, x in zip(self.coeffs, point):
            total = f.add(total, f.mul(c, f(x)))
        return total

    def scaled(self, c) -> LinForm:
        c = self.field(c)
        if c == 0:
            raise InputError("cannot rescale a form by zero")
        return LinForm(self.field, tuple(self.field.mul(x, c) for x in self.coeffs))

    def __str__(self):
        return format_form(self.coeffs)


def canonical(f: LinForm) -> LinForm:
    """The scalar multiple of ``f`` whose first nonzero coefficient is 1."""
    return LinForm(f.field, canonical_vector(f.field, f.coeffs))


def proportional(f: LinForm, g: LinForm) -> bool:
    return canonical(f).coeffs == canonical(g).coeffs


def format_form(coeffs: Sequence, variables: str = DEFAULT_VARIABLES) -> str:
    names = list(variables) if len(coeffs) <= len(variables) else [f"x{i + 1}" for i in range(len(coeffs))]
    out = ""
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        term = name if mag == 1 else f"{mag}{name}"
        if not out:
            out = term if sign == "+" else "-" + term
        else:
            out += f"{sign}{term}"
    return out or "0"


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*([a-zA-Z][a-zA-Z0-9_]*)?")


def parse_form(text: str, field: FieldSpec, variables: Sequence[str] = DEFAULT_VARIABLES[:3]) -> LinForm:
    """Read a linear form such as ``"x - 2*z"`` or ``"3/2y + z"``."""
    names = list(variables)
    coeffs = [0] * len(names)
    s = text.replace(" ", "")
    pos = 0
    if not s:
        raise InputError("empty linear form")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or m.group(3) is None:
            raise InputError(f"cannot parse linear form {text!r}")
        sign, num, var = m.groups()
        if var not in names:
            raise InputError(f"unknown variable {var!r} in {text!r}")
        try:
            c = field(num or 1)
        except FieldError as exc:
            raise InputError(str(exc)) from exc
        if sign == "-":
            c = field.neg(c)
        i = names.index(var)
        coeffs[i] = field.add(field(coeffs[i]), c)
        pos = m.end()
    return LinForm(field, tuple(coeffs))


@dataclass(frozen=True)
class FormCollection:
    """An ordered collection (l_1, ..., l_n) of linear forms in k variables.

    Repeated and proportional entries are allowed.
    """

    field: FieldSpec
    k: int
    forms: tuple[LinForm, ...]

    def __post_init__(self):
        forms = tuple(self.forms)
        if not forms:
            raise InputError("a collection needs at least one form")
        for f in forms:
            if not isinstance(f, LinForm):
                raise InputError(f"{f!r} is not a LinForm")
            if f.k != self.k:
                raise InputError(f"form {f} has {f.k} coefficients, expected {self.k}")
            if f.field != self.field:
                raise FieldError("all forms must live over the collection's field")
        object.__setattr__(self, "forms", forms)

    @classmethod
    def from_vectors(cls, field: FieldSpec, vectors: Iterable[Sequence], k: int | None = None):
        forms = tuple(LinForm(field, tuple(v)) for v in vectors)
        if k is None:
            if not forms:
                raise InputError("cannot infer k from an empty collection")
            k = forms[0].k
        return cls(field, k, forms)

    @classmethod
    def parse(cls, field: FieldSpec, exprs: str | Sequence[str], variables: str = DEFAULT_VARIABLES[:3]):
        """Build a collection from expressions, e.g. ``"x, x-z, y"``."""
        if isinstance(exprs, str):
            exprs = [e for e in exprs.split(",") if e.strip()]
        return cls(field, len(variables), tuple(parse_form(e, field, variables) for e in exprs))

    @property
    def n(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i) -> LinForm:
        return self.forms[i]

    def vectors(self) -> list[tuple]:
        return [f.coeffs for f in self.forms]

    def matrix(self) -> np.ndarray:
        """The n x k coefficient matrix (one form per row)."""
        return self.field.array(self.vectors())

    def canonical_forms(self) -> list[tuple]:
        return [canonical_vector(self.field, f.coeffs) for f in self.forms]

    def classes(self) -> Counter:
        """Multiplicity of each proportionality class, keyed by canonical vector."""
        return Counter(self.canonical_forms())

    def multiset_key(self) -> tuple:
        """Order- and scale-independent key of the collection."""
        return (self.field, self.k, tuple(sorted(self.canonical_forms(), key=_sort_key)))

    def index_of(self, form: LinForm | Sequence) -> int:
        coeffs = form.coeffs if isinstance(form, LinForm) else tuple(self.field(c) for c in form)
        target = canonical_vector(self.field, coeffs)
        for i, c in enumerate(self.canonical_forms()):
            if c == target:
                return i
        raise InputError(f"{format_form(coeffs)} is not in the collection")

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.forms) + ")"

    def to_json(self) -> list[list]:
        return [[self.field.to_json_scalar(c) for c in f.coeffs] for f in self.forms]


def _sort_key(vec):
    return tuple(int(c) if not hasattr(c, "denominator") else (c.numerator, c.denominator) for c in vec)


class Arrangement(FormCollection):
    """A collection of pairwise non-proportional forms (hyperplanes)."""

    def __post_init__(self):
        super().__post_init__()
        canon = self.canonical_forms()
        if len(set(canon)) != len(canon):
            raise InputError("arrangement forms must be pairwise non-proportional")

    @classmethod
    def of(cls, collection: FormCollection) -> Arrangement:
        return cls(collection.field, collection.k, collection.forms)


def rank_of(sigma: FormCollection) -> int:
    """Rank of the n x k coefficient matrix, i.e. the height of <l_1, ..., l_n>."""
    return sigma.field.rank(sigma.matrix())


def delete(sigma: FormCollection, index: int) -> FormCollection:
    """Remove one copy, the entry at ``index``; the result keeps its class if valid."""
    if not 0 <= index < sigma.n:
        raise IndexError(f"index {index} out of range for {sigma.n} forms")
    rest = sigma.forms[:index] + sigma.forms[index + 1:]
    if isinstance(sigma, Arrangement):
        return Arrangement(sigma.field, sigma.k, rest)
    return FormCollection(sigma.field, sigma.k, rest)


def insert(sigma: FormCollection, form: LinForm, index: int | None = None) -> FormCollection:
    forms = list(sigma.forms)
    forms.insert(len(forms) if index is None else index, form)
    return type(sigma)(sigma.field, sigma.k, tuple(forms))


def restrict(sigma: FormCollection, index: int) -> FormCollection:
    """Images of the other forms modulo the form at ``index``, in k-1 variables.

    With l canonical and first nonzero coefficient at position p, the new
    coordinates are the variables x_i (i != p) followed by l itself; setting
    l = 0 means substituting x_p = -sum_{i != p} l_i x_i.  Proportional images
    are kept as repeats.
    """
    if not 0 <= index < sigma.n:
        raise IndexError(f"index {index} out of range for {sigma.n} forms")
    if sigma.k < 2:
        raise RankError("restriction needs at least two variables")
    f = sigma.field
    ell = canonical_vector(f, sigma[index].coeffs)
    p = next(i for i, c in enumerate(ell) if c != 0)
    keep = [i for i in range(sigma.k) if i != p]
    images = []
    for t, form in enumerate(sigma.forms):
        if t == index:
            continue
        c = form.coeffs
        img = tuple(f.add(c[i], f.neg(f.mul(c[p], ell[i]))) for i in keep)
        if all(x == 0 for x in img):
            raise InputError(f"form {form} is proportional to the restricting form")
        images.append(LinForm(f, img))
    return FormCollection(f, sigma.k - 1, tuple(images))
