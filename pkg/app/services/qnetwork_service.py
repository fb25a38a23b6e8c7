"""
Service Réseau Q - Propagation, rétropropagation, pas TD, tampon de rejeu
"""
import logging

import numpy as np

from app.models.qnetwork import QNetwork, OptimizerKind, SgdOptimizer, AdamOptimizer

logger = logging.getLogger(__name__)


class QNetworkService:
    """Service pour le MLP du DQN (numpy pur)"""

    @staticmethod
    def _propagate(net, inputs):
        """
        Propagation avant en conservant les entrées de chaque couche
        et les pré-activations (nécessaires à la rétropropagation).
        """
        layer_inputs, pre_activations = [], []
        hidden = inputs
        last = len(net.weights) - 1
        for index, (weights, bias) in enumerate(zip(net.weights, net.biases)):
            layer_inputs.append(hidden)
            z = hidden @ weights + bias
            pre_activations.append(z)
            hidden = z if index == last else np.maximum(z, 0.0)
        return hidden, layer_inputs, pre_activations

    @staticmethod
    def forward(net, inputs):
        """
        Valeurs Q pour un état (vecteur) ou un lot d'états (matrice).
        """
        inputs = np.asarray(inputs, dtype=float)
        if inputs.ndim not in (1, 2) or inputs.shape[-1] != net.input_size:
            raise ValueError(
                f"Entrée de forme {inputs.shape} (attendu {net.input_size} composantes)"
            )
        output, _, _ = QNetworkService._propagate(net, inputs)
        return output

    @staticmethod
    def stack_batch(batch):
        states = np.stack([t.state for t in batch])
        actions = np.array([t.action for t in batch], dtype=np.int64)
        rewards = np.array([t.reward for t in batch], dtype=float)
        next_states = np.stack([t.next_state for t in batch])
        return states, actions, rewards, next_states

    @staticmethod
    def loss_and_gradients(policy, target, batch, discount):
        """
        Perte MSE de l'erreur TD et gradients par rapport aux paramètres du réseau politique.
        Le réseau cible est une constante. Gradients dans l'ordre de policy.parameters().
        """
        states, actions, rewards, next_states = QNetworkService.stack_batch(batch)
        size = len(batch)

        next_values = QNetworkService.forward(target, next_states)
        targets = rewards + discount * next_values.max(axis=1)

        output, layer_inputs, pre_activations = QNetworkService._propagate(policy, states)
        rows = np.arange(size)
        errors = output[rows, actions] - targets
        loss = float(np.mean(errors ** 2))

        delta = np.zeros_like(output)
        delta[rows, actions] = 2.0 * errors / size

        grads_w, grads_b = [], []
        for index in range(len(policy.weights) - 1, -1, -1):
            grads_w.append(layer_inputs[index].T @ delta)
            grads_b.append(delta.sum(axis=0))
            if index > 0:
                delta = (delta @ policy.weights[index].T) * (pre_activations[index - 1] > 0)

        grads = []
        for grad_w, grad_b in zip(reversed(grads_w), reversed(grads_b)):
            grads.extend([grad_w, grad_b])
        return loss, grads

    @staticmethod
    def td_train_step(policy, target, batch, hp, optimizer=None):
        """
        Un pas de descente sur la perte TD.
        Retourne (policy mis à jour, perte avant le pas).
        """
        if not batch:
            raise ValueError("Le lot d'entraînement est vide")
        if not policy.same_architecture(target):
            raise ValueError(
                f"Architectures différentes: {policy.layer_sizes} / {target.layer_sizes}"
            )

        if optimizer is None:
            optimizer = QNetworkService.build_optimizer(hp)

        loss, grads = QNetworkService.loss_and_gradients(policy, target, batch, hp.discount)
        optimizer.step(policy.parameters(), grads)
        return policy, loss

    @staticmethod
    def sync_target(policy, target):
        """Copie bit à bit des poids du réseau politique dans le réseau cible."""
        if not policy.same_architecture(target):
            raise ValueError(
                f"Architectures différentes: {policy.layer_sizes} / {target.layer_sizes}"
            )
        for source, destination in zip(policy.parameters(), target.parameters()):
            np.copyto(destination, source)
        return target

    @staticmethod
    def build_optimizer(hp):
        if hp.optimizer == OptimizerKind.SGD:
            return SgdOptimizer(hp.learning_rate)
        return AdamOptimizer(
            hp.learning_rate,
            beta1=hp.adam_beta1,
            beta2=hp.adam_beta2,
            epsilon=hp.adam_epsilon
        )

    @staticmethod
    def buffer_push(buffer, transition):
        """Ajout circulaire : une fois plein, l'entrée la plus ancienne est remplacée."""
        if len(buffer.items) < buffer.capacity:
            buffer.items.append(transition)
        else:
            buffer.items[buffer.cursor] = transition
        buffer.cursor = (buffer.cursor + 1) % buffer.capacity
        return buffer

    @staticmethod
    def buffer_sample(buffer, batch_size, rng):
        """
        Tire batch_size transitions uniformément sans remise.
        Retourne None tant que le tampon n'est pas assez rempli.
        """
        if not buffer.is_ready(batch_size):
            return None
        indices = rng.choice(len(buffer.items), size=batch_size, replace=False)
        return [buffer.items[i] for i in indices]

    @staticmethod
    def save_snapshot(net, path):
        """Sauvegarde des poids (.npz)."""
        arrays = {'layer_sizes': np.asarray(net.layer_sizes)}
        for index, (weights, bias) in enumerate(zip(net.weights, net.biases)):
            arrays[f'W{index}'] = weights
            arrays[f'b{index}'] = bias
        np.savez(path, **arrays)
        logger.info("Poids du réseau sauvegardés dans %s", path)
        return path

    @staticmethod
    def load_snapshot(path):
        with np.load(path) as data:
            layer_sizes = tuple(int(s) for s in data['layer_sizes'])
            count = len(layer_sizes) - 1
            weights = [data[f'W{i}'].copy() for i in range(count)]
            biases = [data[f'b{i}'].copy() for i in range(count)]
        return QNetwork(layer_sizes, weights, biases)
