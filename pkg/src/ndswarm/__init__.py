"""ndswarm: explore n-dimensional point clouds as a 3D swarm of avatars.

Pipeline: a dataset (dimensions x points) is split by a user assignment
into spatial axes, avatar visual features, PCA-filled anonymous
dimensions, and skipped columns; the spatial block is navigated with 4D
plane rotations and panning, cut by a thick slab, and perspective-projected
into renderable scene frames.
"""

from .assignment import (ANONYMOUS, SKIPPED, AssignmentError, Category,
                         Counts, DimensionAssignment, Role, SpatialAxis,
                         VisualFeature, counts, spatial, validate, visual)
from .dataset import (Dataset, DatasetError, DimensionSummary,
                      generate_synthetic, load_csv, summarize, write_csv)
from .projection import (FilterMatrix, PcaComponent, PcaReport,
                         ProjectedData, ProjectionError, apply_filter,
                         build_filter_matrix, pca_components, pca_report,
                         project, standardize)
from .scene import (CameraConfig, SceneFrame, avatar_params, build_frame,
                    parse_frame, perspective_project, serialize_frame)
from .slab import SlabConfig, SlabMode, filter_visible, slab_mask
from .view import (RotationPlane, ViewState, apply_view, plane_rotation,
                   rotate, translate)

__version__ = "0.1.0"
