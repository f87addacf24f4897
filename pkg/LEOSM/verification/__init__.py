from .verification import AwgnOracleCheck, DetectorOracleCheck, default_detector_checks, exhaustive_search
