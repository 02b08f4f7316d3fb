#pragma once

#include <json.hpp>

#include "qchan/analysis.hpp"

namespace qchan {

using Json = nlohmann::json;

// Matrices are nested row-major arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Channel wire format: {"d": int, "kraus": [matrix, ...]}.
Json channel_to_json(const Channel& e);
Channel channel_from_json(const Json& j, Tolerance tol = {});

// Choi wire format: {"d_in", "d_out", "matrix", "normalized"}.
Json choi_to_json(const ChoiMatrix& c);
ChoiMatrix choi_from_json(const Json& j);

/// Accepts either wire format; a Choi payload goes through kraus_from_choi.
Channel channel_from_any_json(const Json& j, Tolerance tol = {});

Json algebra_to_json(const StarAlgebra& a);

// Eigenvalues as [re, im] pairs sorted by descending modulus then argument.
Json spectral_to_json(const SpectralData& s);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json verdict_to_json(const SeparabilityVerdict& v);
SeparabilityVerdict verdict_from_json(const Json& j);

Json flags_to_json(const ChannelFlags& f);
Json index_result_to_json(const IndexResult& r);
Json md_chain_to_json(const MdChain& chain);
Json block_decomposition_to_json(const BlockDecomposition& dec);
Json asymptotic_to_json(const AsymptoticClassification& c);
Json densify_to_json(const DensifyResult& r);

/// Report envelope: {"schema": "qchan-report/1", "channel": ..., sections}.
Json make_report(const Channel& e);

}  // namespace qchan
