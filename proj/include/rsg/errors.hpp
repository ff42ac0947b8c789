/*
 * Copyright 2026 The rsgames authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsg {

/// Base class for everything thrown by this library.
class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- arena construction ---

class OverlappingOwnership : public GameError {
public:
    using GameError::GameError;
};

class DanglingNode : public GameError {
public:
    using GameError::GameError;
};

class EdgeOutOfRange : public GameError {
public:
    using GameError::GameError;
};

class NodeOutOfRange : public GameError {
public:
    using GameError::GameError;
};

// --- arena file format ---

/// Malformed input line; carries the 1-based line number.
class SyntaxError : public GameError {
public:
    SyntaxError(std::size_t line, const std::string& what)
        : GameError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed line with an invalid meaning (duplicate owner, out-of-range
/// target, unknown objective keyword, ...).
class SemanticError : public GameError {
public:
    using GameError::GameError;
};

// --- solving ---

class ObjectiveMismatch : public GameError {
public:
    using GameError::GameError;
};

class UnknownEngine : public GameError {
public:
    using GameError::GameError;
};

/// Fixpoint iteration exceeded the theoretical stage bound; implementation bug.
class InternalError : public GameError {
public:
    using GameError::GameError;
};

// --- strategy synthesis ---

class MissingWitness : public GameError {
public:
    using GameError::GameError;
};

class IllegalMove : public GameError {
public:
    using GameError::GameError;
};

// --- oracles ---

class TooLarge : public GameError {
public:
    using GameError::GameError;
};

// --- generation & benchmarking ---

class ConfigInvalid : public GameError {
public:
    using GameError::GameError;
};

class ZeroBase : public GameError {
public:
    using GameError::GameError;
};

class ResultMismatch : public GameError {
public:
    using GameError::GameError;
};

} // namespace rsg
