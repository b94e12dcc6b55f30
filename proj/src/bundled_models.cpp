#include <array>

#include "nbb/model_io.hpp"

namespace nbb {

namespace {

// Triplet frequencies of the adenovirus, SARS-CoV-2 and SARS-CoV reference
// genomes, six decimals as published. Rows sum to 1 only to ~5e-6.
constexpr std::array<double, kNumTriplets> kAdenoTable = {
    0.031826, 0.020016, 0.018463, 0.018551,  // AAA..AAT
    0.020016, 0.015327, 0.010316, 0.016265,  // ACA..ACT
    0.014213, 0.017701, 0.015591, 0.014711,  // AGA..AGT
    0.012836, 0.011224, 0.017378, 0.018990,  // ATA..ATT
    0.020573, 0.014008, 0.019342, 0.017115,  // CAA..CAT
    0.019400, 0.014067, 0.010257, 0.014506,  // CCA..CCT
    0.009055, 0.015503, 0.010257, 0.009143,  // CGA..CGT
    0.013012, 0.011459, 0.017525, 0.019576,  // CTA..CTT
    0.017496, 0.012220, 0.013832, 0.011927,  // GAA..GAT
    0.017847, 0.015063, 0.015327, 0.016499,  // GCA..GCT
    0.016704, 0.014243, 0.012279, 0.013041,  // GGA..GGT
    0.013334, 0.010228, 0.014067, 0.016294,  // GTA..GTT
    0.018961, 0.015679, 0.010579, 0.012836,  // TAA..TAT
    0.013774, 0.013744, 0.008059, 0.014301,  // TCA..TCT
    0.015503, 0.017290, 0.018170, 0.017027,  // TGA..TGT
    0.018873, 0.016968, 0.019019, 0.030595,  // TTA..TTT
};

constexpr std::array<double, kNumTriplets> kCovidTable = {
    0.026367, 0.010660, 0.016776, 0.030176,  // AAA..AAT
    0.012699, 0.006851, 0.003709, 0.016609,  // ACA..ACT
    0.016208, 0.007519, 0.008421, 0.019015,  // AGA..AGT
    0.024429, 0.010694, 0.029475, 0.038765,  // ATA..ATT
    0.012565, 0.006015, 0.008956, 0.012030,  // CAA..CAT
    0.006149, 0.002573, 0.001604, 0.009491,  // CCA..CCT
    0.002406, 0.001771, 0.001571, 0.005614,  // CGA..CGT
    0.017544, 0.007085, 0.014203, 0.020552,  // CTA..CTT
    0.012899, 0.005982, 0.007252, 0.021621,  // GAA..GAT
    0.008221, 0.004278, 0.002373, 0.013868,  // GCA..GCT
    0.005514, 0.005247, 0.003409, 0.018346,  // GGA..GGT
    0.020151, 0.007419, 0.016308, 0.037562,  // GTA..GTT
    0.032148, 0.017244, 0.018179, 0.039533,  // TAA..TAT
    0.012498, 0.006115, 0.003676, 0.019416,  // TCA..TCT
    0.023593, 0.014203, 0.019115, 0.038464,  // TGA..TGT
    0.044981, 0.016508, 0.035390, 0.059985,  // TTA..TTT
};

constexpr std::array<double, kNumTriplets> kSarsTable = {
    0.025581, 0.018051, 0.018891, 0.021917,  // AAA..AAT
    0.026219, 0.013076, 0.005210, 0.022018,  // ACA..ACT
    0.018085, 0.011765, 0.013984, 0.015059,  // AGA..AGT
    0.013345, 0.011294, 0.026085, 0.024438,  // ATA..ATT
    0.024471, 0.016202, 0.014891, 0.018589,  // CAA..CAT
    0.013311, 0.004773, 0.003059, 0.011631,  // CCA..CCT
    0.004672, 0.004471, 0.002756, 0.007194,  // CGA..CGT
    0.018723, 0.012000, 0.018891, 0.024034,  // CTA..CTT
    0.015261, 0.012337, 0.013278, 0.015597,  // GAA..GAT
    0.014421, 0.007866, 0.004975, 0.020908,  // GCA..GCT
    0.011698, 0.009849, 0.004975, 0.013916,  // GGA..GGT
    0.014723, 0.009984, 0.018488, 0.019698,  // GTA..GTT
    0.019160, 0.019933, 0.011832, 0.019026,  // TAA..TAT
    0.020202, 0.007059, 0.005849, 0.019093,  // TCA..TCT
    0.022018, 0.022085, 0.018723, 0.026724,  // TGA..TGT
    0.023160, 0.018925, 0.026085, 0.027463,  // TTA..TTT
};
}  // namespace

TripletModel bundled_model(BundledGenome genome) {
  switch (genome) {
    case BundledGenome::kAdeno:
      return TripletModel("Adeno", TripletDistribution::normalized(kAdenoTable, 1e-4));
    case BundledGenome::kCovid:
      return TripletModel("COVID", TripletDistribution::normalized(kCovidTable, 1e-4));
    case BundledGenome::kSars:
      return TripletModel("SARS", TripletDistribution::normalized(kSarsTable, 1e-4));
  }
  fail(ErrorCode::kInvalidArgument, "unknown bundled genome");
}

std::vector<TripletModel> bundled_models() {
  return {bundled_model(BundledGenome::kAdeno), bundled_model(BundledGenome::kCovid),
          bundled_model(BundledGenome::kSars)};
}

std::size_t bundled_genome_length(BundledGenome genome) {
  switch (genome) {
    case BundledGenome::kAdeno: return 34125;
    case BundledGenome::kCovid: return 29926;
    case BundledGenome::kSars: return 29751;
  }
  return 0;
}

}  // namespace nbb
