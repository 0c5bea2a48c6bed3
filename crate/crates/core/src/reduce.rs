//! Bounded search for exchange reducibility with verifiable move traces.
