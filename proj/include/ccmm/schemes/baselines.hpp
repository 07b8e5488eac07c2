#pragma once

#include "ccmm/model.hpp"

namespace ccmm {

/// Memory M_t at which the structure-agnostic scheme with parameter t operates.
Rational agnostic_memory(int K, int N, const Rational& a, int t);

/// Coded caching over the N(N+1)/2 compressed product files, each treated as an opaque B-symbol file.
class AgnosticScheme final : public Scheme {
 public:
  explicit AgnosticScheme(int t) : t_(t) {}
  int t() const noexcept { return t_; }

  std::string name() const override { return "agnostic"; }
  void validate(const ProblemInstance& inst) const override;
  CacheContents place(const ProblemInstance& inst, const Library& lib) const override;
  DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                             const DemandVector& demands) const override;
  FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                     const DeliveryTranscript& transcript, const DemandVector& demands) const override;
  Rational closed_form_load(const ProblemInstance& inst) const override;

 private:
  int t_;
};

/// Every user caches the first (M/N) r columns of every matrix; the rest of each product is unicast raw.
class UncodedScheme final : public Scheme {
 public:
  std::string name() const override { return "uncoded"; }
  void validate(const ProblemInstance& inst) const override;
  CacheContents place(const ProblemInstance& inst, const Library& lib) const override;
  DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                             const DemandVector& demands) const override;
  FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                     const DeliveryTranscript& transcript, const DemandVector& demands) const override;
  Rational closed_form_load(const ProblemInstance& inst) const override;
};

/// Coded caching on the raw matrices; each user recovers both factors and multiplies locally.
class MultiRequestScheme final : public Scheme {
 public:
  explicit MultiRequestScheme(int t) : t_(t) {}
  int t() const noexcept { return t_; }

  std::string name() const override { return "multireq"; }
  void validate(const ProblemInstance& inst) const override;
  CacheContents place(const ProblemInstance& inst, const Library& lib) const override;
  DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                             const DemandVector& demands) const override;
  FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                     const DeliveryTranscript& transcript, const DemandVector& demands) const override;
  Rational closed_form_load(const ProblemInstance& inst) const override;

 private:
  int t_;
};

}  // namespace ccmm
