#include <benchmark/benchmark.h>

#include "imd/cipher/block_cipher.hpp"
#include "imd/cipher/p256.hpp"
#include "imd/common/rng.hpp"

namespace {

using imd::cipher::CipherId;

void BM_EncryptBlock(benchmark::State& state) {
  const auto id = static_cast<CipherId>(state.range(0));
  imd::Rng rng(1);
  const auto key = imd::cipher::SymmetricKey::random(rng);
  imd::Bytes block(imd::cipher::block_size(id));
  rng.fill(block);
  for (auto _ : state) {
    block = imd::cipher::encrypt_block(id, key, block);
    benchmark::DoNotOptimize(block.data());
  }
  state.SetLabel(std::string(imd::cipher::to_string(id)));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * block.size()));
}

void BM_EcdhSharedSecret(benchmark::State& state) {
  imd::Rng rng(2);
  const auto a = imd::cipher::generate_keypair(rng);
  const auto b = imd::cipher::generate_keypair(rng);
  for (auto _ : state) {
    auto z = imd::cipher::shared_secret(a, b.public_point());
    benchmark::DoNotOptimize(z);
  }
}

}  // namespace

BENCHMARK(BM_EncryptBlock)->DenseRange(0, 2);
BENCHMARK(BM_EcdhSharedSecret)->Unit(benchmark::kMicrosecond);
