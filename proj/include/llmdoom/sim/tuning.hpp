#pragma once

// Surrogate gameplay constants. None of these are claims about the original
// engine; they are tuned so that a room of two zombiemen takes a handful of
// pistol shots and a 3-tick key press moves about one tile.

namespace llmdoom::sim::tuning {

inline constexpr double kMoveStep = 0.4;       // tiles per held tick
inline constexpr double kSpeedMoveStep = 0.8;  // with SPEED toggled on
inline constexpr double kTurnStepDeg = 15.0;   // degrees per held tick

inline constexpr double kPlayerRadius = 0.25;
inline constexpr double kEnemyRadius = 0.4;   // movement collision
inline constexpr double kEnemyHitRadius = 0.5;
inline constexpr double kBarrelRadius = 0.4;  // both collision and hitscan

inline constexpr int kPlayerMaxHealth = 100;
inline constexpr int kPlayerMaxArmor = 200;
inline constexpr int kStartBullets = 50;
inline constexpr int kMaxBullets = 200;

inline constexpr int kPistolDamage = 10;
inline constexpr double kPistolRange = 20.0;

inline constexpr int kZombiemanHp = 20;
inline constexpr int kImpHp = 60;
inline constexpr int kBarrelHp = 10;

inline constexpr int kEnemyDamage = 4;
inline constexpr int kEnemyAttackPeriod = 8;  // ticks in range between attack rolls
inline constexpr double kEnemyHitChance = 0.6;
inline constexpr double kEnemyAttackRange = 1.5;
inline constexpr double kEnemyStopDistance = 1.0;
inline constexpr double kEnemySpeed = 0.1;
inline constexpr double kEnemyWakeRange = 12.0;

inline constexpr int kBarrelBlastDamage = 60;
inline constexpr double kBarrelBlastRadius = 1.5;

inline constexpr int kAcidDamage = 4;
inline constexpr int kAcidPeriod = 10;  // consecutive ticks on acid per damage

// Sideways correction tried when a step is blocked outright.
inline constexpr double kCornerNudgeStep = 0.05;
inline constexpr double kCornerNudgeMax = 0.35;

inline constexpr double kUseRange = 1.2;
inline constexpr double kPickupRadius = 0.6;
inline constexpr int kHealthPickup = 10;
inline constexpr int kArmorPickup = 25;
inline constexpr int kAmmoPickup = 10;

}  // namespace llmdoom::sim::tuning
