"""depict3d: a 3D visual-language depiction engine.

Models generic depictions (parametric 3D graphics with containers and
stretch intervals), lays out nested visual programs with a rubber-sheet
stretch algorithm, validates well-formedness, generates deterministic
builder code, and serves an interactive editor over HTTP.
"""

from .depiction import (
    Container,
    Diagnostic,
    GenericDepiction,
    Material,
    Primitive,
    StretchInterval,
    interface_compatible,
    load_depiction,
    normalize,
    parse_depiction,
    validate,
)
from .errors import DepictionError, DocumentError
from .geometry import Aabb, Vec3
from .interaction import (
    Camera,
    InsertionContext,
    Ray,
    insertion_contexts,
    pick,
    screen_ray,
    select_cylinder,
    select_lasso,
)
from .layout import ContainerBox, LayoutScene, SceneNode, construct_extent, layout_program
from .patterns import PatternSpec, child_offsets, preferred_size
from .program import (
    Construct,
    ContainerRule,
    DofMask,
    KindDef,
    LanguageDef,
    Program,
    allowed_dof,
    check_program,
    insert,
    move,
    parse_language,
    parse_program,
    program_to_doc,
    remove,
)
from .codegen import emit, emit_all
from .sceneio import export_scene, load_fixture, load_language_file
from .stretch import (
    ContainerLayout,
    StretchMap1D,
    apply_map,
    build_map,
    stretch_depiction,
)

__version__ = "0.1.0"

__all__ = [
    "Aabb",
    "Camera",
    "Construct",
    "Container",
    "ContainerBox",
    "ContainerLayout",
    "ContainerRule",
    "DepictionError",
    "Diagnostic",
    "DocumentError",
    "DofMask",
    "GenericDepiction",
    "InsertionContext",
    "KindDef",
    "LanguageDef",
    "LayoutScene",
    "Material",
    "PatternSpec",
    "Primitive",
    "Program",
    "Ray",
    "SceneNode",
    "StretchInterval",
    "StretchMap1D",
    "Vec3",
    "allowed_dof",
    "apply_map",
    "build_map",
    "check_program",
    "child_offsets",
    "construct_extent",
    "emit",
    "emit_all",
    "export_scene",
    "insert",
    "insertion_contexts",
    "interface_compatible",
    "layout_program",
    "load_depiction",
    "load_fixture",
    "load_language_file",
    "move",
    "normalize",
    "parse_depiction",
    "parse_language",
    "parse_program",
    "pick",
    "preferred_size",
    "program_to_doc",
    "remove",
    "screen_ray",
    "select_cylinder",
    "select_lasso",
    "stretch_depiction",
    "validate",
]
