"""Permutations of {0,1,2,3} used as face-gluing maps."""

from __future__ import annotations


class Perm4:
    """A bijection of {0,1,2,3}, stored as the tuple of images of 0,1,2,3."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm4 is immutable")

    def __getitem__(self, i):
        return self.images[i]

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        # (self * other)(x)  ==  self(other(x))
        return Perm4(tuple(self.images[other.images[i]] for i in range(4)))

    def inverse(self):
        inv = [0] * 4
        for i, img in enumerate(self.images):
            inv[img] = i
        return Perm4(tuple(inv))

    def sign(self):
        """+1 for even permutations, -1 for odd."""
        s = 1
        im = self.images
        for i in range(4):
            for j in range(i + 1, 4):
                if im[i] > im[j]:
                    s = -s
        return s

    def is_identity(self):
        return self.images == (0, 1, 2, 3)

    def __eq__(self, other):
        return isinstance(other, Perm4) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Perm4(%d%d%d%d)" % self.images

    def compact(self):
        """Four-digit string of images, as used in the .tri file format."""
        return "%d%d%d%d" % self.images

    @classmethod
    def from_compact(cls, text):
        if len(text) != 4 or not text.isdigit():
            raise ValueError(f"malformed permutation {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_map(cls, mapping):
        """Build from a dict {source: image} covering all of 0..3."""
        if sorted(mapping) != [0, 1, 2, 3]:
            raise ValueError(f"incomplete vertex map {mapping!r}")
        return cls(tuple(mapping[i] for i in range(4)))


IDENTITY = Perm4((0, 1, 2, 3))

ALL_PERMS = tuple(
    Perm4((a, b, c, d))
    for a in range(4)
    for b in range(4)
    for c in range(4)
    for d in range(4)
    if len({a, b, c, d}) == 4
)
