from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from orchid_wsindy.config import CompressionSettings
from orchid_wsindy.pipeline.archive import SurrogateArchive
from orchid_wsindy.pipeline.offline import compress
from orchid_wsindy.pipeline.online import CompressionResult, process_stream


@pytest.fixture()
def onset_result(
    make_settings: Callable[..., CompressionSettings], onset_frames: list[np.ndarray]
) -> CompressionResult:
    return process_stream(onset_frames, make_settings())


@pytest.fixture()
def onset_archive(onset_result: CompressionResult) -> SurrogateArchive:
    return compress(onset_result)
