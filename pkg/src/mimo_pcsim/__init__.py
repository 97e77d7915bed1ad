"""mimo-pcsim - massive-MIMO downlink under pilot-contamination attacks."""

__version__ = "0.1.0"
