//! Cabling descriptors, the steps-configuration constructor, cable
//! superimposition, and the built-in fixtures.
