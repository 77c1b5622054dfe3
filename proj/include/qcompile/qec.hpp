// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcompile/rng.hpp"
#include "qcompile/statevector.hpp"

namespace qcompile {

enum class Protocol { no_qec, encode_only, mf_qec };
enum class NoiseSites { logical_ops_only, all_gates };
enum class LogicalState { zero, one, plus, minus };

struct NoiseSpec {
  double epsilon = 0;  // single-qubit gate infidelity in [0, 1)
  NoiseSites sites = NoiseSites::logical_ops_only;
};

struct QecReport {
  Protocol protocol = Protocol::no_qec;
  double epsilon = 0;
  double logical_error_probability = 0;
  std::uint64_t seed = 0;
};

/// Random-axis rotation E = exp(-i (theta/2) n·sigma) with
/// theta = 2 arccos(1 - eps), so infidelity(E, I) = eps exactly.
Matrix2 coherent_error(double epsilon, Rng& rng);

/// 9 qubits: data 0-2, ancilla copy 3-5, syndrome 6-8.
/// Error copy (CNOT d->a), parity extraction into the syndrome triple and
/// Toffoli-controlled correction for each single bit flip.
Circuit build_repetition_mfqec();

/// Shor code state on the 9 data qubits (low bits) of an n-qubit register;
/// all other qubits |0>.
StateVector encode_shor(LogicalState l, int n_qubits = 9);

/// Ideal 9-qubit codeword for overlap computations.
StateVector shor_codeword(LogicalState l);

/// 21 qubits: data 0-8 (blocks 012/345/678), ancilla 9-17, syndrome 18-20.
/// Ancilla blocks are prepared as GHZ triples inside the circuit. The
/// bit-flip round runs Steane-style per block with syndrome-qubit reuse via
/// uncomputation (9 Toffolis); the phase round extracts the three XXXXXX
/// block-pair parities into the syndrome qubits and applies 3 two-controlled
/// Z corrections, for 12 multi-control gates in total.
Circuit build_shor_mfqec();

/// Logical X on the Shor code: Z on the first qubit of each block.
std::vector<CircuitOp> shor_logical_x();

/// 1 - <psi| P_ideal (x) I_ancilla |psi> with the data register projected
/// onto `ideal` (data = low bits of the register).
double logical_error_probability(const StateVector& state,
                                 const StateVector& ideal_data);

QecReport run_sample(Protocol protocol, const NoiseSpec& noise,
                     std::uint64_t seed);

struct SweepPoint {
  double epsilon_low = 0;   // cell bounds; equal => fixed epsilon
  double epsilon_high = 0;
};

struct SweepConfig {
  std::vector<Protocol> protocols;
  std::vector<SweepPoint> grid;
  int samples_per_point = 1;
  std::uint64_t seed = 0;
  NoiseSites sites = NoiseSites::logical_ops_only;
  int threads = 1;
};

/// Deterministic per (config, seed); per-sample seeds derive from the master
/// seed and sample position, so any thread count gives the same reports.
std::vector<QecReport> sweep(const SweepConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  double fidelity = 0;
};

/// Deterministic exactness suite: 3 repetition-code single-X checks plus the
/// 27 Shor single-Pauli checks, each against the 1 - 1e-10 fidelity floor.
std::vector<CheckResult> verify_exactness();

std::string protocol_name(Protocol p);

}  // namespace qcompile
