"""
A predator learning to reach a static prey
==========================================

A 15x15 grid, the predator starting at (0, 0) and the prey sitting at
(6, 6). The standard agent learns with tabular Q-learning and picks moves
epsilon-greedily.
"""

from affectq import AgentKind, GridWorld, LearningParams, run_agent

world = GridWorld()
print(f"grid {world.width}x{world.height}, start {world.start}, goal {world.goal}")
print("shortest path:", world.optimal_steps(), "steps")

# %%
# One simulation of 200 episodes. Early episodes are long random walks; once
# the goal reward has propagated back through the table the agent heads
# straight for the prey, up to its epsilon-random detours.
run = run_agent(world, AgentKind.STANDARD, LearningParams(alpha=0.1, gamma=0.9, epsilon=0.1),
                seed=2024, episodes=200)
steps = run.steps
for lo in range(0, 200, 25):
    chunk = steps[lo:lo + 25]
    print(f"episodes {lo + 1:3d}-{lo + len(chunk):3d}: mean steps {sum(chunk) / len(chunk):7.1f}")

print("first optimal episode:", run.first_optimal_episode)
print("steps spent before it:", run.total_steps_before_optimal)

# %%
# Higher epsilon keeps the agent wandering even after it has learned.
for eps in (0.1, 0.5, 0.9):
    r = run_agent(world, AgentKind.STANDARD, LearningParams(epsilon=eps), seed=7)
    print(f"epsilon {eps}: mean steps/episode {r.mean_steps_per_episode:6.1f}")
