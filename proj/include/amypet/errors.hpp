/*
   errors.hpp

   Copyright 2026 the amypet authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#ifndef AMYPET_ERRORS_HPP
#define AMYPET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amypet {

/// Base class of all amypet failures. `DataError` subtypes indicate bad or
/// inconsistent inputs; `NumericalError` subtypes indicate an optimizer that
/// failed to converge or a singular system.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// volume_io
class BadMagic : public DataError { public: using DataError::DataError; };
class UnsupportedDatatype : public DataError { public: using DataError::DataError; };
class DimensionMismatch : public DataError { public: using DataError::DataError; };
class TruncatedFile : public DataError { public: using DataError::DataError; };
class IoFailure : public DataError { public: using DataError::DataError; };
class InvalidVolume : public DataError { public: using DataError::DataError; };

// parcellation
class UnknownLabel : public DataError { public: using DataError::DataError; };
class EmptyRegion : public DataError { public: using DataError::DataError; };
class ZeroReference : public DataError { public: using DataError::DataError; };

// cohort
class EmptyCohort : public DataError { public: using DataError::DataError; };
class DegenerateMarginals : public DataError { public: using DataError::DataError; };

// svm_core
class LengthMismatch : public DataError { public: using DataError::DataError; };
class TooFewRows : public DataError { public: using DataError::DataError; };
class SingleClass : public DataError { public: using DataError::DataError; };
class NoConvergence : public NumericalError { public: using NumericalError::NumericalError; };
class SchemaViolation : public DataError { public: using DataError::DataError; };

// evaluation
class BadK : public DataError { public: using DataError::DataError; };
class ClassTooSmall : public DataError { public: using DataError::DataError; };

// lime_explain
class SingularSystem : public NumericalError { public: using NumericalError::NumericalError; };
class UnknownRegion : public DataError { public: using DataError::DataError; };
class EmptyClass : public DataError { public: using DataError::DataError; };

// phantom
class BadSpec : public DataError { public: using DataError::DataError; };

} // namespace amypet

#endif // AMYPET_ERRORS_HPP
