// C ABI of the qident shared library. Thin translation layer: every entry
// point catches the core's exceptions, records a thread-local message, and
// maps the exception class onto a status code.

#include "qident/qident.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "qident/closed_form.hpp"
#include "qident/errors.hpp"
#include "qident/montecarlo.hpp"
#include "qident/operator_io.hpp"
#include "qident/spectral.hpp"
#include "qident/tensor.hpp"
#include "qident/types.hpp"

struct qident_op {
  qident::DenseOperator impl;
};

namespace {

thread_local std::string t_last_error;

qident_status fail(qident_status status, const char* message) {
  t_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
qident_status guarded(Body&& body) {
  try {
    body();
    return QIDENT_OK;
  } catch (const qident::ArgumentError& e) {
    return fail(QIDENT_ERR_ARGUMENT, e.what());
  } catch (const qident::SizeError& e) {
    return fail(QIDENT_ERR_SIZE, e.what());
  } catch (const qident::OverflowError& e) {
    return fail(QIDENT_ERR_OVERFLOW, e.what());
  } catch (const qident::ContractError& e) {
    return fail(QIDENT_ERR_CONTRACT, e.what());
  } catch (const qident::IoError& e) {
    return fail(QIDENT_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(QIDENT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QIDENT_ERR_INTERNAL, "unknown error");
  }
}

qident_status require(bool ok, const char* message) {
  return ok ? QIDENT_OK : fail(QIDENT_ERR_ARGUMENT, message);
}

std::size_t effective_cap(uint64_t dim_cap) {
  return dim_cap == 0 ? qident::kDefaultDimCap
                      : static_cast<std::size_t>(dim_cap);
}

qident_status make_op(qident::DenseOperator op, qident_op** out) {
  *out = new qident_op{std::move(op)};
  return QIDENT_OK;
}

qident_estimate to_c(const qident::Estimate& e) {
  return qident_estimate{e.mean, e.std_error, e.trials, e.seed.value};
}

}  // namespace

extern "C" {

const char* qident_status_name(qident_status status) {
  switch (status) {
    case QIDENT_OK: return "ok";
    case QIDENT_ERR_ARGUMENT: return "argument-error";
    case QIDENT_ERR_SIZE: return "size-error";
    case QIDENT_ERR_OVERFLOW: return "overflow-error";
    case QIDENT_ERR_CONTRACT: return "contract-error";
    case QIDENT_ERR_IO: return "io-error";
    case QIDENT_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* qident_last_error_message(void) { return t_last_error.c_str(); }

const char* qident_version(void) { return "1.0.0"; }

qident_status qident_sym_dim(int32_t n, int32_t d, uint64_t* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::sym_dim(n, d); });
}

qident_status qident_mean_trace_distance(int32_t d, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::mean_trace_distance(d); });
}

qident_status qident_p_disc_mean(int32_t d, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::p_disc_mean(d); });
}

qident_status qident_p_ident_n1(int32_t d, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::p_ident_n1(d); });
}

qident_status qident_delta_qubit(int32_t two_j, int32_t n_copies, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::delta_qubit(two_j, n_copies); });
}

qident_status qident_two_row_multiplicity(int32_t lambda1, int32_t n_copies,
                                          int32_t d, uint64_t* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    const auto diagram = qident::TwoRowDiagram::from_lambda1(lambda1, n_copies);
    *out = qident::two_row_multiplicity(diagram, d);
  });
}

qident_status qident_p_ident_general(int32_t n_copies, int32_t d,
                                     double* value, qident_term* terms,
                                     int32_t terms_capacity,
                                     int32_t* terms_written) {
  if (auto s = require(value != nullptr, "null output"); s != QIDENT_OK) {
    return s;
  }
  return guarded([&] {
    const auto result = qident::p_ident_general(n_copies, d);
    *value = result.value;
    int32_t written = 0;
    if (terms != nullptr) {
      for (const auto& term : result.terms) {
        if (written >= terms_capacity) break;
        terms[written++] = qident_term{term.lambda1, term.lambda2,
                                       term.multiplicity, term.delta};
      }
    }
    if (terms_written != nullptr) *terms_written = written;
  });
}

qident_status qident_p_ident_qubit(int32_t n_copies, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::p_ident_qubit(n_copies); });
}

qident_status qident_p_ident_limit(int32_t d, double* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] { *out = qident::p_ident_limit(d); });
}

qident_status qident_build_identification_operator(int32_t n_copies, int32_t d,
                                                   uint64_t dim_cap,
                                                   qident_op** out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    make_op(qident::build_identification_operator(n_copies, d,
                                                  effective_cap(dim_cap)),
            out);
  });
}

qident_status qident_build_identification_operator_sym(int32_t n_copies,
                                                       int32_t d,
                                                       uint64_t dim_cap,
                                                       qident_op** out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    make_op(qident::build_identification_operator_sym(n_copies, d,
                                                      effective_cap(dim_cap)),
            out);
  });
}

qident_status qident_build_mcopy_operator(int32_t m_copies, int32_t n_copies,
                                          int32_t d, uint64_t dim_cap,
                                          qident_op** out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    make_op(qident::build_mcopy_operator(m_copies, n_copies, d,
                                         effective_cap(dim_cap)),
            out);
  });
}

void qident_op_free(qident_op* op) { delete op; }

int64_t qident_op_dim(const qident_op* op) {
  return op == nullptr ? 0 : static_cast<int64_t>(op->impl.dim());
}

int32_t qident_op_factor_count(const qident_op* op) {
  return op == nullptr ? 0 : static_cast<int32_t>(op->impl.factor_dims.size());
}

qident_status qident_op_factor_dims(const qident_op* op, int32_t* dims,
                                    int32_t capacity) {
  if (auto s = require(op != nullptr && dims != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  const auto& factors = op->impl.factor_dims;
  if (capacity < static_cast<int32_t>(factors.size())) {
    return fail(QIDENT_ERR_ARGUMENT, "factor_dims buffer too small");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    dims[i] = factors[i];
  }
  return QIDENT_OK;
}

qident_status qident_op_entries(const qident_op* op, double* out) {
  if (auto s = require(op != nullptr && out != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  const auto& m = op->impl.entries;
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out[k++] = m(r, c).real();
      out[k++] = m(r, c).imag();
    }
  }
  return QIDENT_OK;
}

qident_status qident_op_eigenvalues(const qident_op* op, double* out) {
  if (auto s = require(op != nullptr && out != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  return guarded([&] {
    const auto decomposition = qident::eig_hermitian(op->impl);
    for (Eigen::Index k = 0; k < decomposition.eigenvalues.size(); ++k) {
      out[k] = decomposition.eigenvalues(k);
    }
  });
}

qident_status qident_op_trace_norm(const qident_op* op, double* out) {
  if (auto s = require(op != nullptr && out != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  return guarded([&] { *out = qident::trace_norm(op->impl); });
}

qident_status qident_op_product_trace(const qident_op* a, const qident_op* b,
                                      double* out) {
  if (auto s = require(a != nullptr && b != nullptr && out != nullptr,
                       "null argument");
      s != QIDENT_OK) {
    return s;
  }
  if (a->impl.dim() != b->impl.dim()) {
    return fail(QIDENT_ERR_ARGUMENT, "operator dimensions differ");
  }
  *out = (a->impl.entries * b->impl.entries).trace().real();
  return QIDENT_OK;
}

qident_status qident_op_dump(const qident_op* op, const char* path) {
  if (auto s = require(op != nullptr && path != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  return guarded([&] { qident::dump_operator(op->impl, path); });
}

qident_status qident_build_optimal_povm(const qident_op* d_op, double tol,
                                        qident_op** e1, qident_op** e2) {
  if (auto s = require(d_op != nullptr && e1 != nullptr && e2 != nullptr,
                       "null argument");
      s != QIDENT_OK) {
    return s;
  }
  *e1 = nullptr;
  *e2 = nullptr;
  return guarded([&] {
    auto povm = qident::build_optimal_povm(d_op->impl, tol);
    make_op(std::move(povm.e1), e1);
    make_op(std::move(povm.e2), e2);
  });
}

qident_status qident_probability_from_operator(const qident_op* d_op,
                                               int32_t m_copies,
                                               int32_t n_copies, int32_t d,
                                               double* out) {
  if (auto s = require(d_op != nullptr && out != nullptr, "null argument");
      s != QIDENT_OK) {
    return s;
  }
  return guarded([&] {
    *out = qident::probability_from_operator(d_op->impl, m_copies, n_copies, d);
  });
}

qident_status qident_estimate_discrimination(int32_t d, uint64_t trials,
                                             uint64_t seed, int32_t workers,
                                             qident_estimate* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    *out = to_c(qident::estimate_discrimination(d, trials,
                                                qident::Seed{seed}, workers));
  });
}

qident_status qident_estimate_identification(int32_t n_copies, int32_t d,
                                             uint64_t trials, uint64_t seed,
                                             qident_sim_mode mode,
                                             int32_t workers, uint64_t dim_cap,
                                             qident_estimate* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  if (mode != QIDENT_MODE_CONDITIONAL && mode != QIDENT_MODE_OUTCOME) {
    return fail(QIDENT_ERR_ARGUMENT, "unknown simulation mode");
  }
  return guarded([&] {
    const auto core_mode = mode == QIDENT_MODE_CONDITIONAL
                               ? qident::SimMode::kConditional
                               : qident::SimMode::kOutcome;
    *out = to_c(qident::estimate_identification(n_copies, d, trials,
                                                qident::Seed{seed}, core_mode,
                                                workers,
                                                effective_cap(dim_cap)));
  });
}

qident_status qident_estimate_mcopy(int32_t m_copies, int32_t n_copies,
                                    int32_t d, uint64_t trials, uint64_t seed,
                                    int32_t workers, uint64_t dim_cap,
                                    qident_estimate* out) {
  if (auto s = require(out != nullptr, "null output"); s != QIDENT_OK) return s;
  return guarded([&] {
    *out = to_c(qident::estimate_mcopy(m_copies, n_copies, d, trials,
                                       qident::Seed{seed}, workers,
                                       effective_cap(dim_cap)));
  });
}

}  // extern "C"
