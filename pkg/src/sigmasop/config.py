"""Default size guards. The CLI can override them with flags or environment variables."""

ENUM_BOUND = 6
SIGMA_IP_BOUND = 5
IP_SETS_BOUND = 4

ENV_ENUM_BOUND = "SIGMASOP_ENUM_BOUND"
ENV_SIGMA_IP_BOUND = "SIGMASOP_SIGMA_IP_BOUND"
ENV_IP_SETS_BOUND = "SIGMASOP_IP_SETS_BOUND"
