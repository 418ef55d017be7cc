from dataclasses import dataclass
from typing import Dict, List, Tuple

from .ground_bipartition import GroundSet, canonicalize, mask_of
from .ground_family import Family, remove_trivial


__all__ = ['AtomPartition', 'atoms', 'contract_atoms', 'atom_relation_coarsens']


@dataclass(frozen=True)
class AtomPartition:
    """Classes of elements never separated by any member of a family.

    classes are sorted by their smallest element; class_of maps element id to
    the class index.
    """
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Dict[int, int]

    def __len__(self):
        return len(self.classes)

    def masks(self) -> List[int]:
        return [mask_of(cls) for cls in self.classes]

    def same_class(self, i: int, j: int) -> bool:
        return self.class_of[i] == self.class_of[j]


def atoms(F: Family) -> AtomPartition:
    ground = F.ground
    signature_to_elements = {}
    sides = [member.canonical for member in F.distinct()]
    for element in ground.ids():
        bit = 1 << (element - 1)
        signature = tuple(bool(side & bit) for side in sides)
        signature_to_elements.setdefault(signature, []).append(element)
    classes = sorted((tuple(elements) for elements in signature_to_elements.values()),
                     key=lambda cls: cls[0])
    class_of = {element: index for index, cls in enumerate(classes) for element in cls}
    return AtomPartition(classes=tuple(classes), class_of=class_of)


def contract_atoms(F: Family, drop_trivial: bool = True) -> Tuple[Family, Dict[Tuple[int, ...], int]]:
    """Identifies the ground set with the atoms of F.

    Atoms are renumbered by their smallest original element. Returns the
    contracted family and the mapping atom class -> new id. With drop_trivial,
    members trivial in the image are removed as in the game.
    """
    partition = atoms(F)
    mapping = {cls: index + 1 for index, cls in enumerate(partition.classes)}
    new_ground = GroundSet(len(partition.classes))
    images = []
    if new_ground.size >= 2:
        for member in F:
            new_ids = [mapping[cls] for cls in partition.classes
                       if member.canonical & (1 << (cls[0] - 1))]
            images.append(canonicalize(new_ids, new_ground))
    contracted = Family(images, new_ground)
    if drop_trivial:
        contracted = remove_trivial(contracted)
    return contracted, mapping


def atom_relation_coarsens(before: Family, after: Family) -> bool:
    """Whether i ~ j under `before` implies i ~ j under `after`."""
    old, new = atoms(before), atoms(after)
    for cls in old.classes:
        if len({new.class_of[element] for element in cls}) != 1:
            return False
    return True
