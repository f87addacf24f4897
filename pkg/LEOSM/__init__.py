from .geometry import (LinkGeometry,
                       AtmosphereParams,
                       PathLossBreakdown,
                       slant_distance,
                       free_space_path_loss,
                       atmospheric_gas_loss,
                       total_path_loss,
                       db_to_linear_amplitude,
                       effective_receive_snr_db,
                       )
from .fading import (FadingParams,
                     DopplerParams,
                     ChannelRealization,
                     sample_channel_matrix,
                     doppler_shift,
                     propagation_delay,
                     apply_time_variation,
                     apply_csi_error,
                     )
from .modem import (Scheme,
                    ConstellationKind,
                    SchemeConfig,
                    Constellation,
                    TransmitVector,
                    build_constellation,
                    bits_per_use,
                    encode,
                    demap,
                    )
from .detection import (ReceivedSignal,
                        DetectionResult,
                        OpCount,
                        transmit,
                        detect,
                        ml_detect_sm,
                        ml_detect_ssk,
                        pairwise_snr_metric,
                        complexity_sm,
                        complexity_ssk,
                        complexity_trad,
                        instrumented_detect,
                        measure_detection_runtime,
                        )
from .montecarlo import (LinkMode,
                         SweepConfig,
                         BerPoint,
                         SweepResult,
                         run_trial,
                         estimate_ber,
                         run_sweep,
                         awgn_bpsk_reference,
                         )
from .config import ComparisonSuite, parse_config, serialize_config
from .report import emit_csv, render_manifest, write_outputs, se_table, complexity_table, runtime_table
from .exceptions import LEOSMError, DomainError, ConfigurationError, UsageError
from .utils import SimulationLog, makedirs
from .cli import run_command
from ._version import __version__
