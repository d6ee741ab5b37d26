# Configuration module for the Krull-Schmidt engine
