// Serial reference kernels against their OpenMP counterparts on one
// simulated auction: opening, proof generation, verification.
//
//   bench_kernels [key_bits] [bidders] [threads]

#include <omp.h>

#include <chrono>
#include <iostream>
#include <string>

#include "sealbid/protocol.h"
#include "sealbid/simulation.h"

using namespace sealbid;

namespace {

template <typename F>
double TimeMs(F&& f) {
  auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int Bench(unsigned bits, size_t bidders) {

  simulation::Config config;
  config.bidders = bidders;
  config.attributes = 3;
  config.key_bits = bits;
  config.seed = 42;

  std::cout << "key_bits=" << bits << " bidders=" << bidders
            << " omp_max_threads=" << omp_get_max_threads() << "\n";
  std::cout << "phase,serial_ms,parallel_ms,speedup\n";

  simulation::Run base = simulation::RunBidding(config);
  const auto run_open = [&](protocol::ExecMode mode, bulletin::Board& board) {
    ManualClock clock(base.terms.deadline, std::chrono::seconds(1));
    bulletin::BoardHost host(board, base.auctioneer.signing, clock);
    Rng rng = Rng::FromSeed(7);
    protocol::OpenAndProve(host, base.auctioneer.paillier.private_key, rng, mode);
  };

  bulletin::Board serial_board = base.board;
  bulletin::Board parallel_board = base.board;
  const double open_serial = TimeMs([&] { run_open(protocol::ExecMode::kSerial, serial_board); });
  const double open_parallel = TimeMs([&] { run_open(protocol::ExecMode::kParallel, parallel_board); });
  std::cout << "open_and_prove," << open_serial << ',' << open_parallel << ','
            << open_serial / open_parallel << '\n';

  if (serial_board.Serialize() != parallel_board.Serialize()) {
    std::cerr << "serial and parallel boards differ\n";
    return 1;
  }

  bool ok = true;
  const double verify_serial = TimeMs([&] {
    ok &= static_cast<bool>(protocol::VerifyOutcome(serial_board, protocol::ExecMode::kSerial));
  });
  const double verify_parallel = TimeMs([&] {
    ok &= static_cast<bool>(protocol::VerifyOutcome(serial_board, protocol::ExecMode::kParallel));
  });
  std::cout << "verify_outcome," << verify_serial << ',' << verify_parallel << ','
            << verify_serial / verify_parallel << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  unsigned bits = 512;
  size_t bidders = 40;
  try {
    if (argc > 4) throw std::invalid_argument("too many arguments");
    if (argc > 1) bits = static_cast<unsigned>(std::stoul(argv[1]));
    if (argc > 2) bidders = static_cast<size_t>(std::stoul(argv[2]));
    if (argc > 3) protocol::SetThreads(std::stoi(argv[3]));
  } catch (const std::exception&) {
    std::cerr << "usage: bench_kernels [key_bits] [bidders] [threads]\n";
    return 64;
  }
  try {
    return Bench(bits, bidders);
  } catch (const std::exception& e) {
    std::cerr << "bench_kernels: " << e.what() << "\n";
    return 1;
  }
}
