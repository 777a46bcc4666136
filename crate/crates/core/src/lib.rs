// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Core data structures and algorithms for fault-tolerant circuit
//! benchmarking: Pauli algebra, a gate-level IR, Solovay-Kitaev synthesis,
//! compilation to Pauli-based computation, circuit statistics, benchmark
//! generators and a dense-matrix reference simulator.

#![no_std]

extern crate alloc;

pub mod circuit;
pub mod generators;
pub mod metrics;
pub mod oracle;
pub mod pauli;
pub mod pbc;
pub mod synthesis;
