# Euler Factor Test Suite
